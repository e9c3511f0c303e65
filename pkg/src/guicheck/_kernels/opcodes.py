ALWAYS = 0
ABOVE = 1
BELOW = 2
LEFTTO = 3
RIGHTTO = 4
CONTAINS = 5
OVER = 6
SMALLER = 7
LEFTALIGNED = 8
RIGHTALIGNED = 9
TOPALIGNED = 10
BOTTOMALIGNED = 11
EQ = 20
NE = 21
LT = 22
GT = 23

POSITIONAL = {
    "above": ABOVE,
    "below": BELOW,
    "leftto": LEFTTO,
    "rightto": RIGHTTO,
    "contains": CONTAINS,
    "over": OVER,
    "smaller": SMALLER,
    "leftaligned": LEFTALIGNED,
    "rightaligned": RIGHTALIGNED,
    "topaligned": TOPALIGNED,
    "bottomaligned": BOTTOMALIGNED,
}
COMPARE = {"==": EQ, "!=": NE, "<": LT, ">": GT}

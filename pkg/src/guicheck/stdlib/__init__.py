"""Built-in specification library and loading of user library directories."""

from __future__ import annotations

from collections.abc import Mapping
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from ..errors import DuplicateName, GuicheckError, ParseError
from ..speclang import Spec, parse_specs


class IOFailure(GuicheckError):
    def __init__(self, path, reason):
        self.path = str(path)
        super().__init__(f"{path}: {reason}")


class Library(Mapping):
    """Read-only name -> Spec mapping that remembers where each spec came from."""

    def __init__(self, specs: dict[str, Spec] | None = None, sources: dict[str, str] | None = None):
        self._specs = dict(specs or {})
        self._sources = dict(sources or {})

    def __getitem__(self, name: str) -> Spec:
        return self._specs[name]

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._specs))

    def __len__(self) -> int:
        return len(self._specs)

    def source(self, name: str) -> str:
        return self._sources[name]

    def __repr__(self):
        return f"Library({sorted(self._specs)})"


def _parse_file(text: str, origin: str) -> list[Spec]:
    try:
        return list(parse_specs(text))
    except ParseError as exc:
        raise exc.with_path(origin) from None


@lru_cache(maxsize=1)
def builtin_library() -> Library:
    specs, sources = {}, {}
    root = resources.files(__name__)
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".gspec"):
            continue
        origin = f"<stdlib>/{entry.name}"
        for spec in _parse_file(entry.read_text(encoding="utf-8"), origin):
            if spec.name in specs:
                raise DuplicateName(spec.name, sources[spec.name], origin)
            specs[spec.name] = spec
            sources[spec.name] = origin
    return Library(specs, sources)


def load_library(dirs: Iterable[str | Path], allow_override: bool = False) -> Library:
    """Builtins plus every ``*.gspec`` directly inside each of ``dirs``.

    A user spec may replace a builtin of the same name only with
    ``allow_override``; two user files defining one name is always an error.
    """
    base = builtin_library()
    specs = dict(base._specs)
    sources = dict(base._sources)
    user: dict[str, str] = {}
    for d in dirs:
        d = Path(d)
        if not d.is_dir():
            raise IOFailure(d, "not a readable directory")
        for path in sorted(d.glob("*.gspec")):
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise IOFailure(path, exc.strerror or str(exc)) from None
            for spec in _parse_file(text, str(path)):
                if spec.name in user:
                    raise DuplicateName(spec.name, user[spec.name], str(path))
                if spec.name in specs and not allow_override:
                    raise DuplicateName(spec.name, sources[spec.name], str(path))
                user[spec.name] = str(path)
                specs[spec.name] = spec
                sources[spec.name] = str(path)
    return Library(specs, sources)

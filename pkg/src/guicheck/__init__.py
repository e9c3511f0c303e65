"""Check rendered GUI shape traces against layout specifications."""

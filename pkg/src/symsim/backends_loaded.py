"""Importing this module registers the four standard backends."""

from . import cflobdd, dense, mtbdd, wbdd  # noqa: F401

"""On-disk record of computed n(a,b;r) values.

One line per (a, b, r) in ``results.txt`` inside the cache directory::

    a=2 b=2 r=3 status=exact n=88 cert=/path/cert.txt time=2026-... version=0.1.0

``status=lower`` means only n(a,b;r) > n was shown.  The directory is
``$VDWTRIPLES_CACHE_DIR`` or ``~/.cache/vdwtriples``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .certificates import atomic_write_text

__all__ = ["CacheEntry", "ResultCache", "CacheInconsistencyError", "default_cache_dir"]

ENV_VAR = "VDWTRIPLES_CACHE_DIR"


class CacheInconsistencyError(RuntimeError):
    """A stored value contradicts a fresh computation."""


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path.home() / ".cache" / "vdwtriples"


@dataclass(frozen=True)
class CacheEntry:
    a: int
    b: int
    r: int
    status: str  # exact | lower
    n: int
    cert: str = ""
    time: str = ""
    version: str = __version__

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.r)

    def line(self) -> str:
        return (
            f"a={self.a} b={self.b} r={self.r} status={self.status} n={self.n} "
            f"cert={self.cert or '-'} time={self.time or '-'} version={self.version}"
        )

    @classmethod
    def parse(cls, line: str) -> CacheEntry:
        fields = dict(item.split("=", 1) for item in line.split())
        return cls(
            int(fields["a"]),
            int(fields["b"]),
            int(fields["r"]),
            fields["status"],
            int(fields["n"]),
            "" if fields.get("cert", "-") == "-" else fields["cert"],
            "" if fields.get("time", "-") == "-" else fields["time"],
            fields.get("version", ""),
        )


def _conflict(old: CacheEntry, new: CacheEntry) -> bool:
    if old.status == "exact" and new.status == "exact":
        return old.n != new.n
    if old.status == "exact":
        return old.n <= new.n  # fresh search showed n > new.n
    if new.status == "exact":
        return new.n <= old.n
    return False


class ResultCache:
    def __init__(self, directory: str | Path | None = None) -> None:
        self.dir = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.dir / "results.txt"

    def entries(self) -> dict[tuple[int, int, int], CacheEntry]:
        if not self.path.exists():
            return {}
        out = {}
        for line in self.path.read_text(encoding="ascii").splitlines():
            if line.strip() and not line.startswith("#"):
                e = CacheEntry.parse(line)
                out[e.key] = e
        return out

    def get(self, a: int, b: int, r: int) -> CacheEntry | None:
        return self.entries().get((a, b, r))

    def cert_path(self, a: int, b: int, r: int, n: int) -> Path:
        return self.dir / "certs" / f"a{a}_b{b}_r{r}_n{n}.txt"

    def record(self, entry: CacheEntry) -> CacheEntry:
        """Store ``entry`` unless it contradicts what is already cached.

        A weaker result never replaces a stronger one: an exact value beats a
        lower bound, and a larger lower bound beats a smaller one.
        """
        table = self.entries()
        old = table.get(entry.key)
        if not entry.time:
            entry = replace(entry, time=datetime.now(timezone.utc).isoformat(timespec="seconds"))
        if old is not None:
            if _conflict(old, entry):
                raise CacheInconsistencyError(
                    f"cached {old.status} n={old.n} for (a,b,r)={entry.key} contradicts "
                    f"fresh {entry.status} n={entry.n}"
                )
            if old.status == "exact" or (entry.status == "lower" and entry.n <= old.n):
                return old
        table[entry.key] = entry
        body = "".join(e.line() + "\n" for _, e in sorted(table.items()))
        atomic_write_text(self.path, body)
        return entry

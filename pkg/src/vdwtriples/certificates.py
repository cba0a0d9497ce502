"""Plain-text coloring certificates.

::

    vdw-triple-cert v1
    a=2 b=2 r=3 n=87
    # optional comment lines
    0 0 1 1 ...          (20 colors per line, colors of 1..n in order)

``a`` and ``b`` may be ``-`` when the coloring is not tied to a family.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .core import Coloring, FamilyParams, MalformedColoringError

__all__ = ["MAGIC", "Certificate", "CertificateError", "dumps", "loads", "write", "read"]

MAGIC = "vdw-triple-cert v1"
PER_LINE = 20


class CertificateError(ValueError):
    """The file is not a well-formed certificate."""


@dataclass(frozen=True)
class Certificate:
    family: FamilyParams | None
    coloring: Coloring
    comments: tuple[str, ...] = ()

    @property
    def r(self) -> int:
        return self.coloring.r

    @property
    def n(self) -> int:
        return self.coloring.n


def dumps(cert: Certificate) -> str:
    a, b = ("-", "-") if cert.family is None else (cert.family.a, cert.family.b)
    lines = [MAGIC, f"a={a} b={b} r={cert.r} n={cert.n}"]
    lines += [f"# {c}" for c in cert.comments]
    colors = cert.coloring.colors
    for i in range(0, len(colors), PER_LINE):
        lines.append(" ".join(map(str, colors[i : i + PER_LINE])))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Certificate:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise CertificateError(f"first line must be {MAGIC!r}")
    if len(lines) < 2:
        raise CertificateError("missing header line")
    header = {}
    for item in lines[1].split():
        key, sep, value = item.partition("=")
        if not sep or key in header:
            raise CertificateError(f"bad header field {item!r}")
        header[key] = value
    if set(header) != {"a", "b", "r", "n"}:
        raise CertificateError(f"header needs exactly a, b, r, n; got {sorted(header)}")
    try:
        r, n = int(header["r"]), int(header["n"])
        if header["a"] == "-" and header["b"] == "-":
            family = None
        else:
            family = FamilyParams(int(header["a"]), int(header["b"]))
    except (TypeError, ValueError) as exc:
        raise CertificateError(f"bad header values: {exc}") from None

    comments = []
    tokens: list[str] = []
    for line in lines[2:]:
        s = line.strip()
        if s.startswith("#"):
            comments.append(s[1:].strip())
        elif s:
            tokens.extend(s.split())
    if len(tokens) != n:
        raise CertificateError(f"header says n={n} but {len(tokens)} colors follow")
    try:
        colors = tuple(int(t) for t in tokens)
        coloring = Coloring(r, colors)
    except (ValueError, MalformedColoringError) as exc:
        raise CertificateError(str(exc)) from None
    return Certificate(family, coloring, tuple(comments))


def atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def write(cert: Certificate, path: str | Path) -> Path:
    path = Path(path)
    atomic_write_text(path, dumps(cert))
    return path


def read(path: str | Path) -> Certificate:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise CertificateError(f"not ASCII: {exc}") from None
    return loads(text)

"""Text formats for graphs, digraphs and structures.

Graph files hold ``n <count>`` and then ``e u v`` (undirected) or ``a u v``
(directed) lines. Structure files hold ``sig R/2 S/3 ...``, ``n <count>`` and
``t <name> v1 ... vk`` lines. Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import os
from pathlib import Path

from .errors import ArgumentError, ParseError
from .named import by_name
from .structures import Digraph, Graph, Signature, Structure


def parse_text(text: str, path: str | None = None) -> Structure:
    n = None
    sig = None
    edges, arcs, tuples = [], [], []
    kinds = set()

    def fail(msg, line):
        raise ParseError(msg, line=line, path=path)

    def ints(parts, line):
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            fail(f"expected integers, got {' '.join(parts)!r}", line)
        if n is None:
            fail("vertex line before 'n <count>'", line)
        for v in vals:
            if not 0 <= v < n:
                fail(f"vertex {v} out of range 0..{n - 1}", line)
        return vals

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "n":
            if n is not None:
                fail("duplicate 'n' line", lineno)
            if len(rest) != 1 or not rest[0].isdigit():
                fail("expected 'n <count>'", lineno)
            n = int(rest[0])
        elif head == "sig":
            if sig is not None:
                fail("duplicate 'sig' line", lineno)
            symbols = []
            for item in rest:
                name, slash, ar = item.partition("/")
                if not slash or not ar.isdigit():
                    fail(f"bad symbol {item!r}, expected name/arity", lineno)
                symbols.append((name, int(ar)))
            try:
                sig = Signature(symbols)
            except ArgumentError as exc:
                fail(str(exc), lineno)
        elif head in ("e", "a"):
            if len(rest) != 2:
                fail(f"expected '{head} <u> <v>'", lineno)
            u, v = ints(rest, lineno)
            if u == v:
                fail("loops are not allowed", lineno)
            (edges if head == "e" else arcs).append((u, v))
            kinds.add(head)
        elif head == "t":
            if sig is None:
                fail("tuple line before 'sig'", lineno)
            if not rest:
                fail("expected 't <name> <v1> ...'", lineno)
            name, vals = rest[0], rest[1:]
            if name not in sig:
                fail(f"unknown symbol {name!r}", lineno)
            if len(vals) != sig.arity(name):
                fail(f"{name} has arity {sig.arity(name)}, got {len(vals)} entries", lineno)
            tuples.append((name, tuple(ints(vals, lineno))))
            kinds.add("t")
        else:
            fail(f"unknown line type {head!r}", lineno)
    if n is None:
        fail("missing 'n <count>' line", 0)
    if len(kinds) > 1:
        fail("mixes edge, arc and tuple lines", 0)
    if sig is not None:
        rels = {name: [] for name in sig.names}
        for name, t in tuples:
            rels[name].append(t)
        return Structure(sig, n, rels)
    if arcs:
        return Digraph(n, arcs)
    return Graph(n, edges)


def parse_graph(path: str | os.PathLike) -> Structure:
    """Read a graph, digraph or structure file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ArgumentError(f"cannot read {p}: {exc.strerror}") from None
    return parse_text(text, str(p))


def format_structure(a: Structure) -> str:
    lines = []
    if isinstance(a, Graph):
        lines.append(f"n {a.n}")
        lines.extend(f"e {u} {v}" for u, v in a.edges)
    elif isinstance(a, Digraph):
        lines.append(f"n {a.n}")
        lines.extend(f"a {u} {v}" for u, v in a.arcs)
    else:
        lines.append("sig " + " ".join(f"{name}/{ar}" for name, ar in a.sig.symbols))
        lines.append(f"n {a.n}")
        for (name, _), ts in zip(a.sig.symbols, a.relations):
            lines.extend(f"t {name} " + " ".join(map(str, t)) for t in sorted(ts))
    return "\n".join(lines) + "\n"


def write_structure(path: str | os.PathLike, a: Structure) -> None:
    Path(path).write_text(format_structure(a))


def resolve(arg: str) -> Structure:
    """A file path if it exists, otherwise a built-in name (``C5``, ``petersen.g``, ``T3``)."""
    if os.path.exists(arg):
        return parse_graph(arg)
    name = os.path.basename(arg)
    if name.endswith(".g"):
        name = name[:-2]
    try:
        return by_name(name)
    except ArgumentError:
        raise ArgumentError(f"{arg!r} is neither a readable file nor a known graph name") from None

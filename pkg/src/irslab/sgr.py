"""Line-oriented text format for finite rooted labeled graphs (".sgr").

    schreier r=<r>
    root <token>
    <src> <label> <dst>     one line per edge, label in {s1..s<r>, *}
    boundary <token>        one line per boundary vertex

Tokens are arbitrary whitespace-free strings. Lines starting with '#' and
blank lines are ignored on parse; emit writes edges in stored order,
boundary tokens sorted and no comments, so parse . emit is the identity on
emitted text.
"""

from __future__ import annotations

from .errors import DomainError
from .oracles import STAR, BallView, FiniteOracle


def _label_str(label) -> str:
    return STAR if label == STAR else f"s{label}"


def emit_sgr(view: BallView) -> str:
    lines = [f"schreier r={view.rank}", f"root {view.root}"]
    seen_star = set()
    for src, label, dst in view.edges:
        if label == STAR:
            key = frozenset((src, dst))
            if key in seen_star:
                continue
            seen_star.add(key)
        lines.append(f"{src} {_label_str(label)} {dst}")
    for v in sorted(view.boundary):
        lines.append(f"boundary {v}")
    return "\n".join(lines) + "\n"


def parse_sgr(text: str) -> BallView:
    rank = None
    root = None
    edges = []
    boundary = []
    vertices: list[str] = []
    seen = set()

    def note(v: str) -> None:
        if v not in seen:
            seen.add(v)
            vertices.append(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "schreier":
            if len(parts) != 2 or not parts[1].startswith("r="):
                raise DomainError(f"line {lineno}: bad header {line!r}")
            rank = int(parts[1][2:])
            if rank < 1:
                raise DomainError(f"line {lineno}: rank must be >= 1")
            continue
        if parts[0] == "root":
            if len(parts) != 2:
                raise DomainError(f"line {lineno}: bad root line")
            root = parts[1]
            note(root)
            continue
        if parts[0] == "boundary":
            if len(parts) != 2:
                raise DomainError(f"line {lineno}: bad boundary line")
            boundary.append(parts[1])
            continue
        if len(parts) != 3:
            raise DomainError(f"line {lineno}: bad edge line {line!r}")
        src, label, dst = parts
        if rank is None:
            raise DomainError("edge line before 'schreier' header")
        if label == STAR:
            lab = STAR
        elif label.startswith("s") and label[1:].isdigit():
            lab = int(label[1:])
            if not 1 <= lab <= rank:
                raise DomainError(f"line {lineno}: label {label} out of range")
        else:
            raise DomainError(f"line {lineno}: bad label {label!r}")
        note(src)
        note(dst)
        edges.append((src, lab, dst))
    if rank is None:
        raise DomainError("missing 'schreier r=<r>' header")
    if root is None:
        raise DomainError("missing 'root <token>' line")
    for v in boundary:
        if v not in seen:
            raise DomainError(f"boundary vertex {v!r} has no edges")
    radius = _root_eccentricity(rank, root, vertices, edges, boundary)
    return BallView(rank, radius, root, vertices, edges, boundary)


def _root_eccentricity(rank, root, vertices, edges, boundary) -> int:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for src, _lab, dst in edges:
        adj[src].append(dst)
        adj[dst].append(src)
    dist = {root: 0}
    frontier = [root]
    ecc = 0
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    ecc = dist[w]
                    nxt.append(w)
        frontier = nxt
    if len(dist) != len(vertices):
        raise DomainError("graph is not connected from the root")
    if boundary:
        bd = max(dist[v] for v in boundary)
        if bd != ecc:
            raise DomainError("boundary vertices are not the farthest layer")
    return ecc


def parse_complete_oracle(text: str) -> FiniteOracle:
    """Parse a .sgr file that must describe a complete finite Schreier graph
    (no boundary, no star edges)."""
    view = parse_sgr(text)
    if view.boundary:
        raise DomainError("expected a complete graph, found boundary vertices")
    return view.to_oracle()


def emit_edgelist(view: BallView) -> str:
    """Plain edge-list export with labels as attributes, one edge per line."""
    lines = []
    seen_star = set()
    for src, label, dst in view.edges:
        if label == STAR:
            key = frozenset((src, dst))
            if key in seen_star:
                continue
            seen_star.add(key)
        lines.append(f"{src} {dst} label={_label_str(label)}")
    return "\n".join(lines) + "\n"

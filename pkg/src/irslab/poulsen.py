"""Recursive percolation sampler with star-edge surgery.

A level-0 copy of a base-law graph is drawn; every vertex is independently
retained with probability p, and each retained vertex x gets a fresh
base-law copy attached by an undirected star edge from x to the copy's
root. The recursion continues copy by copy. Attachment roots already carry
a star edge and are excluded from further percolation, so every vertex
meets at most one star edge and the ambient degree bound 2r+1 holds.

The emitted oracle is the surgered graph: each star edge {v, w} trades the
s1-successors of v and w, which merges the copies into a single Schreier
coset graph. The root is the root of the level-0 copy.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BudgetError, DomainError
from .oracles import STAR, BallView, DEFAULT_BUDGET, SchreierOracle
from .randomness import digest128, subseed
from .words import letters_ordered


class PercolationGraph:
    """The unsurgered graph: disjoint lazily-drawn copies plus star edges.

    Vertices are pairs (path, coset) where path is the tuple of percolated
    cosets leading to this copy (empty for the level-0 copy) and coset is a
    vertex of that copy's own graph.
    """

    def __init__(self, base_law, p, seed: int):
        self.p = Fraction(p)
        if not (0 < self.p < 1):
            raise DomainError("p must lie strictly between 0 and 1")
        self.law = base_law
        self.seed = seed
        self.rank = base_law.rank
        self._threshold = (self.p.numerator << 128) // self.p.denominator
        self._copies: dict = {}
        self._perc: dict = {}
        self.root = ((), self.copy(()).root)

    def copy(self, path) -> SchreierOracle:
        o = self._copies.get(path)
        if o is None:
            o = self.law.sample(subseed(self.seed, "attach", path))
            self._copies[path] = o
        return o

    def percolated(self, u) -> bool:
        """Retained by the Bernoulli field; attachment roots are exempt."""
        hit = self._perc.get(u)
        if hit is None:
            path, v = u
            if path and v == self.copy(path).root:
                hit = False
            else:
                hit = digest128(self.seed, "perc", u) < self._threshold
            self._perc[u] = hit
        return hit

    def star(self, u):
        """Star partner of u, or None."""
        path, v = u
        if path and v == self.copy(path).root:
            return (path[:-1], path[-1])
        if self.percolated(u):
            child = path + (v,)
            return (child, self.copy(child).root)
        return None

    def step(self, u, letter: int):
        """In-copy edge, ignoring stars."""
        path, v = u
        return (path, self.copy(path).neighbor(v, letter))

    def token(self, u) -> str:
        path, v = u
        inner = self.copy(path).token(v)
        if not path:
            return f"p(|{inner})"
        trail = "/".join(
            self.copy(path[:k]).token(path[k]) for k in range(len(path))
        )
        return f"p({trail}|{inner})"


class PoulsenOracle(SchreierOracle):
    """The surgered graph as a lazy Schreier oracle."""

    def __init__(self, base_law, p, seed: int):
        self.graph = PercolationGraph(base_law, p, seed)
        self.rank = self.graph.rank
        self.root = self.graph.root
        self.seed = seed

    def neighbor(self, u, letter: int):
        g = self.graph
        if abs(letter) != 1:
            return g.step(u, letter)
        if letter == 1:
            partner = g.star(u)
            return g.step(partner if partner is not None else u, 1)
        w = g.step(u, -1)
        partner = g.star(w)
        return partner if partner is not None else w

    def token(self, u) -> str:
        return self.graph.token(u)


def poulsen_oracle(base_law, p, seed: int) -> PoulsenOracle:
    return PoulsenOracle(base_law, p, seed)


def star_ball(graph: PercolationGraph, radius: int,
              budget: int = DEFAULT_BUDGET) -> BallView:
    """Ball of the unsurgered graph; star edges count as length-1 steps and
    appear with label '*'."""
    if radius < 0:
        raise DomainError("radius must be >= 0")
    ls = letters_ordered(graph.rank)
    dist = {graph.root: 0}
    order = [graph.root]
    frontier = [graph.root]
    for d in range(radius):
        nxt = []
        for u in frontier:
            steps = [graph.step(u, l) for l in ls]
            partner = graph.star(u)
            if partner is not None:
                steps.append(partner)
            for w in steps:
                if w not in dist:
                    dist[w] = d + 1
                    order.append(w)
                    nxt.append(w)
                    if len(order) > budget:
                        raise BudgetError(
                            f"star ball exceeded budget {budget}"
                        )
        if not nxt:
            break
        frontier = nxt
    tok = {u: graph.token(u) for u in order}
    edges = []
    for u in order:
        for i in range(1, graph.rank + 1):
            w = graph.step(u, i)
            if w in dist:
                edges.append((tok[u], i, tok[w]))
    for u in order:
        partner = graph.star(u)
        if partner is not None and partner in dist and tok[u] < tok[partner]:
            edges.append((tok[u], STAR, tok[partner]))
    boundary = [tok[u] for u in order if dist[u] == radius]
    return BallView(graph.rank, radius, tok[graph.root],
                    [tok[u] for u in order], edges, boundary)


def star_records(view: BallView) -> tuple:
    """Star edges of a view as sorted (v, w) pairs with v < w."""
    pairs = set()
    for src, label, dst in view.edges:
        if label == STAR:
            pairs.add((min(src, dst), max(src, dst)))
    return tuple(sorted(pairs))


def _swap_s1(view: BallView, pairs, keep_stars: bool) -> BallView:
    partner = {}
    for v, w in pairs:
        if v in partner or w in partner:
            raise DomainError("a vertex appears in two star records")
        partner[v] = w
        partner[w] = v
    for v in partner:
        if (v, 1) not in view.out:
            raise DomainError(
                f"starred vertex {v!r} lacks its outgoing s1-edge; "
                "surgery needs all four implicated edges"
            )
    edges = []
    for src, label, dst in view.edges:
        if label == STAR or label == 1:
            continue
        edges.append((src, label, dst))
    for v in view.vertices:
        if v in partner:
            edges.append((v, 1, view.out[(partner[v], 1)]))
        elif (v, 1) in view.out:
            edges.append((v, 1, view.out[(v, 1)]))
    if keep_stars:
        for v, w in pairs:
            edges.append((v, STAR, w))
    return BallView(view.rank, view.radius, view.root, view.vertices,
                    edges, view.boundary)


def surgery(view: BallView) -> BallView:
    """Consume every star edge {v, w}: replace (v, v.s1) and (w, w.s1) by
    (v, w.s1) and (w, v.s1). The output has no star edges. Up to the
    retained star records this is an involution; `inverse_surgery` undoes it."""
    return _swap_s1(view, star_records(view), keep_stars=False)


def inverse_surgery(view: BallView, records) -> BallView:
    """Undo a surgery given its star records: swap the same s1-successor
    pairs back and restore the star edges."""
    return _swap_s1(view, tuple(records), keep_stars=True)


def view_equal_exact(a: BallView, b: BallView) -> bool:
    """Identity of views as labeled graphs: same vertices, root, radius,
    boundary and edge set (star edges compared undirected)."""

    def norm(view):
        es = set()
        for src, label, dst in view.edges:
            if label == STAR:
                es.add((min(src, dst), STAR, max(src, dst)))
            else:
                es.add((src, label, dst))
        return es

    return (
        a.rank == b.rank
        and a.radius == b.radius
        and a.root == b.root
        and set(a.vertices) == set(b.vertices)
        and a.boundary == b.boundary
        and norm(a) == norm(b)
    )

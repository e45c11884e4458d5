"""Shared test fixtures data and independent brute-force oracles.

The brute-force routines deliberately avoid the library's algorithms so
that tests cross-check two separate code paths.
"""

from itertools import permutations

from irslab import FiniteOracle
from irslab.oracles import STAR, BallView


def brute_reduce(letters):
    """Repeated-scan free reduction: rescan until no adjacent cancellation."""
    word = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] == -word[i + 1]:
                del word[i:i + 2]
                changed = True
                break
    return tuple(word)


def brute_root_isomorphic(a: BallView, b: BallView) -> bool:
    """Exhaustive search over root-fixing vertex bijections."""
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False

    def norm(view):
        out = set()
        for src, label, dst in view.edges:
            if label == STAR:
                out.add((min(src, dst), STAR, max(src, dst)))
            else:
                out.add((src, label, dst))
        return out

    ea, eb = norm(a), norm(b)
    others_a = [v for v in a.vertices if v != a.root]
    others_b = [v for v in b.vertices if v != b.root]
    for perm in permutations(others_b):
        mapping = dict(zip(others_a, perm))
        mapping[a.root] = b.root
        mapped = set()
        for src, label, dst in ea:
            if label == STAR:
                x, y = mapping[src], mapping[dst]
                mapped.add((min(x, y), STAR, max(x, y)))
            else:
                mapped.add((mapping[src], label, mapping[dst]))
        if mapped == eb:
            return True
    return False


def brute_aut_count(oracle: FiniteOracle) -> int:
    """Count label-preserving automorphisms by exhaustive bijection search."""
    verts = list(oracle.vertices)
    count = 0
    for perm in permutations(verts):
        mapping = dict(zip(verts, perm))
        ok = True
        for v in verts:
            for i in range(1, oracle.rank + 1):
                if mapping[oracle.neighbor(v, i)] != oracle.neighbor(mapping[v], i):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def index2_oracle() -> FiniteOracle:
    """s1 swaps the two cosets, s2 fixes both: an index-2 normal subgroup."""
    return FiniteOracle.from_perms([(1, 0), (0, 1)], names=["A", "B"])


def one_vertex_oracle() -> FiniteOracle:
    """The whole group as a subgroup of itself: one vertex, all loops."""
    return FiniteOracle.from_perms([(0,), (0,)], names=["v"])


def cyclic_oracle(n: int, shift2: int = 1) -> FiniteOracle:
    """Vertex-transitive graph on Z/n: s1 adds 1, s2 adds shift2."""
    p1 = tuple((i + 1) % n for i in range(n))
    p2 = tuple((i + shift2) % n for i in range(n))
    return FiniteOracle.from_perms([p1, p2])

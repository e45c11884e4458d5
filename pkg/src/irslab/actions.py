"""Finite actions of the free group: r permutations of a point set.

Points act on the right: point . s_i = perms[i](point), and a word acts
letter by letter, so the stabilizer of a point is exactly the set of words
whose walk in the orbit Schreier graph returns to the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import canonical_code, rooted_equal_finite
from .errors import DomainError
from .measures import AtomicMeasure
from .oracles import FiniteOracle
from .randomness import KeyedRng
from .words import Word, words_upto


@dataclass(frozen=True)
class FiniteAction:
    n: int
    perms: tuple  # r tuples, images of s_1..s_r

    inv: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("need at least one point")
        invs = []
        for k, p in enumerate(self.perms, start=1):
            if len(p) != self.n or sorted(p) != list(range(self.n)):
                raise DomainError(f"perm s{k} is not a permutation of 0..{self.n - 1}")
            q = [0] * self.n
            for i, j in enumerate(p):
                q[j] = i
            invs.append(tuple(q))
        object.__setattr__(self, "inv", tuple(invs))

    @property
    def rank(self) -> int:
        return len(self.perms)

    def step(self, point: int, letter: int) -> int:
        if letter > 0:
            return self.perms[letter - 1][point]
        return self.inv[-letter - 1][point]

    def act(self, point: int, w: Word) -> int:
        for l in w:
            point = self.step(point, l)
        return point

    def fixes(self, point: int, w: Word) -> bool:
        return self.act(point, w) == point


def orbit_schreier(action: FiniteAction, point: int) -> FiniteOracle:
    """Schreier graph of the stabilizer of `point`: the orbit with an
    s_i-edge v -> perms[i](v), rooted at `point`."""
    orbit = {point}
    stack = [point]
    while stack:
        v = stack.pop()
        for i in range(action.rank):
            for w in (action.perms[i][v], action.inv[i][v]):
                if w not in orbit:
                    orbit.add(w)
                    stack.append(w)
    names = {v: str(v) for v in orbit}
    succ = {}
    for v in orbit:
        for i in range(1, action.rank + 1):
            w = action.perms[i - 1][v]
            succ[(names[v], i)] = names[w]
    return FiniteOracle(action.rank, sorted(names.values(), key=int),
                        names[point], succ)


def stab_equal(action: FiniteAction, x: int, y: int) -> bool:
    """Whether two points have the same stabilizer subgroup."""
    if x == y:
        return True
    return rooted_equal_finite(
        orbit_schreier(action, x), orbit_schreier(action, y)
    )


def is_totally_nonfree(action: FiniteAction) -> bool:
    """True iff the stabilizer map separates points (all stabilizers
    pairwise distinct)."""
    graphs = [orbit_schreier(action, x) for x in range(action.n)]
    for i in range(action.n):
        for j in range(i + 1, action.n):
            if rooted_equal_finite(graphs[i], graphs[j]):
                return False
    return True


def first_return(perm: tuple, subset) -> dict:
    """First-return map of a permutation on a subset Y: y -> perm^k(y) for
    the least k >= 1 with perm^k(y) in Y. Always a bijection of Y."""
    Y = frozenset(subset)
    if not Y:
        raise DomainError("subset must be nonempty")
    n = len(perm)
    for y in Y:
        if not 0 <= y < n:
            raise DomainError(f"subset point {y} out of range")
    out = {}
    for y in sorted(Y):
        z = perm[y]
        while z not in Y:
            z = perm[z]
        out[y] = z
    return out


def graphing_cost(action: FiniteAction, domains) -> Fraction:
    """Cost of a graphing under the uniform measure: sum of |domain_i| / n,
    with domain_i the subset on which generator i is used."""
    if len(domains) != action.rank:
        raise DomainError("need one domain per generator")
    total = 0
    for d in domains:
        ds = frozenset(d)
        for y in ds:
            if not 0 <= y < action.n:
                raise DomainError(f"domain point {y} out of range")
        total += len(ds)
    return Fraction(total, action.n)


def stab_pushforward_law(action: FiniteAction) -> AtomicMeasure:
    """Uniform point measure pushed through the stabilizer map: an exact
    atomic law over root-isomorphism classes of orbit Schreier graphs."""
    law = AtomicMeasure()
    for x in range(action.n):
        law.add(canonical_code(orbit_schreier(action, x)), Fraction(1, action.n))
    return law


def fixed_word_search(action: FiniteAction, max_len: int = 8):
    """Brute-force search for a nonidentity word with a nonempty first-visit
    fixed set: points x with x.w = x such that no proper suffix of w already
    fixes x. Returns (word, frozenset of points) or None. Not complete: only
    words up to max_len are tried."""
    for w in words_upto(action.rank, max_len):
        if not w:
            continue
        pts = []
        for x in range(action.n):
            if action.act(x, w) != x:
                continue
            if any(action.act(x, w[j:]) == x for j in range(1, len(w))):
                continue
            pts.append(x)
        if pts:
            return w, frozenset(pts)
    return None


def random_action(n: int, rank: int, seed: int) -> FiniteAction:
    rng = KeyedRng(seed, "action")
    return FiniteAction(n, tuple(rng.permutation(n) for _ in range(rank)))


def random_transitive_action(n: int, rank: int, seed: int) -> FiniteAction:
    """First transitive action in a seeded stream of random actions."""
    for k in range(10_000):
        a = random_action(n, rank, seed + k * 0x9E3779B9)
        if len(orbit_schreier(a, 0).vertices) == n:
            return a
    raise DomainError("could not find a transitive action")


def parse_cycles(text: str, n: int) -> tuple:
    """Permutation of 0..n-1 from cycle notation like "(0 1 2)(3 4)" or "id"."""
    text = text.strip()
    perm = list(range(n))
    if text in ("id", "()", ""):
        return tuple(perm)
    if not text.startswith("("):
        raise DomainError(f"bad cycle notation {text!r}")
    moved = set()
    for chunk in text.replace(")", ")\n").split("\n"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise DomainError(f"bad cycle {chunk!r}")
        pts = [int(s) for s in chunk[1:-1].replace(",", " ").split()]
        if len(pts) != len(set(pts)):
            raise DomainError(f"repeated point in cycle {chunk!r}")
        for x in pts:
            if not 0 <= x < n:
                raise DomainError(f"point {x} out of range 0..{n - 1}")
            if x in moved:
                raise DomainError(f"point {x} in two cycles")
            moved.add(x)
        for i, x in enumerate(pts):
            perm[x] = pts[(i + 1) % len(pts)]
    return tuple(perm)


def format_cycles(perm: tuple) -> str:
    n = len(perm)
    seen = set()
    parts = []
    for i in range(n):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        seen.add(i)
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "id"


def parse_action(text: str) -> FiniteAction:
    """Action file format: `points <n>` then `perm s<i>: <cycles>` lines."""
    n = None
    perms: dict[int, tuple] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("points"):
            n = int(line.split()[1])
            continue
        if line.startswith("perm"):
            if n is None:
                raise DomainError("'points <n>' must come first")
            head, _, cyc = line.partition(":")
            gen = head.split()[1]
            if not gen.startswith("s"):
                raise DomainError(f"line {lineno}: bad generator {gen!r}")
            perms[int(gen[1:])] = parse_cycles(cyc, n)
            continue
        raise DomainError(f"line {lineno}: cannot parse {line!r}")
    if n is None or not perms:
        raise DomainError("action file needs 'points' and 'perm' lines")
    rank = max(perms)
    if sorted(perms) != list(range(1, rank + 1)):
        raise DomainError("perm lines must cover s1..sr without gaps")
    return FiniteAction(n, tuple(perms[i] for i in range(1, rank + 1)))


def emit_action(action: FiniteAction) -> str:
    lines = [f"points {action.n}"]
    for i, p in enumerate(action.perms, start=1):
        lines.append(f"perm s{i}: {format_cycles(p)}")
    return "\n".join(lines) + "\n"

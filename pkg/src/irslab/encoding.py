"""Symbolic configurations encoded as subgroups.

A configuration assigns a symbol in {1..n} to every group element. Its
encoded subgroup is read off a decorated Cayley graph: each edge (g, g.s1)
is subdivided and the new vertex carries an s2-labeled cycle whose length
is the symbol at g; the extra cycle vertices take s1-loops (and s_i-loops
for i >= 3, which also sit on the subdivision vertex). Walking a doubled
first generator therefore crosses one subdivision vertex per s1-step, and
the whole shift action is carried by the doubling endomorphism phi:
encode(f . x) = phi(f) . encode(x).

Configurations here are backed by finite actions with labeled points, so
the configuration space is closed, invariant and finite; this makes
membership in the encoded set decidable on encoded graphs and lets the
translate pushforward be computed with exact rational masses.
"""

from __future__ import annotations

from fractions import Fraction

from .actions import FiniteAction
from .errors import AmbiguityError, DomainError, HorizonError, NotInYError, NotInZError
from .measures import AtomicMeasure
from .oracles import SchreierOracle, ball, conjugate, trace
from .analysis import root_isomorphic
from .randomness import KeyedRng
from .words import (
    Word,
    inverse_word,
    phi_word,
    reduce_word,
    word_to_str,
    words_upto,
)


class SubshiftSpace:
    """A finite invariant configuration space: a labeled finite action.

    The configuration with basepoint q reads x(g) = label(q . g); shifting
    by f moves the basepoint to q . f^-1.
    """

    def __init__(self, action: FiniteAction, labels, alphabet: int):
        if action.rank < 2:
            raise DomainError("encoding needs rank >= 2")
        if alphabet < 1:
            raise DomainError("alphabet size must be >= 1")
        labels = tuple(labels)
        if len(labels) != action.n:
            raise DomainError("need one label per point")
        for s in labels:
            if not 1 <= s <= alphabet:
                raise DomainError(
                    f"symbol {s} outside alphabet 1..{alphabet} (0 is illegal)"
                )
        self.action = action
        self.labels = labels
        self.alphabet = alphabet
        self.rank = action.rank
        self._psi: dict = {}
        self._balls: dict = {}
        self._pc: dict = {}

    def points(self) -> list["SubshiftPoint"]:
        return [SubshiftPoint(self, q) for q in range(self.action.n)]

    def point(self, q: int) -> "SubshiftPoint":
        return SubshiftPoint(self, q)

    def psi(self, q: int) -> "PsiOracle":
        o = self._psi.get(q)
        if o is None:
            o = PsiOracle(SubshiftPoint(self, q))
            self._psi[q] = o
        return o

    def candidate_balls(self, radius: int):
        got = self._balls.get(radius)
        if got is None:
            got = [ball(self.psi(q), radius) for q in range(self.action.n)]
            self._balls[radius] = got
        return got


class SubshiftPoint:
    def __init__(self, space: SubshiftSpace, basepoint: int):
        if not 0 <= basepoint < space.action.n:
            raise DomainError("basepoint out of range")
        self.space = space
        self.basepoint = basepoint

    def symbol(self, g: Word) -> int:
        return self.space.labels[self.space.action.act(self.basepoint, g)]

    def shifted(self, f: Word) -> "SubshiftPoint":
        """The configuration f . x: basepoint moves along f^-1."""
        q = self.space.action.act(self.basepoint, inverse_word(f))
        return SubshiftPoint(self.space, q)

    def pattern(self, radius: int) -> dict:
        return {g: self.symbol(g) for g in words_upto(self.space.rank, radius)}


class PsiOracle(SchreierOracle):
    """Lazy Schreier oracle of an encoded configuration.

    Vertices: ("c", g) for the Cayley copy of g, ("y", g, j) for the j-th
    vertex of the cycle at the subdivision of (g, g.s1), 0 <= j < symbol(g).
    Root: ("c", ()).
    """

    def __init__(self, point: SubshiftPoint):
        self.point = point
        self.rank = point.space.rank
        self.root = ("c", ())
        self._sym: dict = {}

    def symbol(self, g: Word) -> int:
        s = self._sym.get(g)
        if s is None:
            s = self.point.symbol(g)
            self._sym[g] = s
        return s

    def neighbor(self, vertex, letter: int):
        kind = vertex[0]
        if kind == "c":
            g = vertex[1]
            if letter == 1:
                return ("y", g, 0)
            if letter == -1:
                return ("y", reduce_word(g + (-1,)), 0)
            return ("c", reduce_word(g + (letter,)))
        _, g, j = vertex
        a = abs(letter)
        if a == 1:
            if j > 0:
                return vertex
            return ("c", reduce_word(g + (1,))) if letter == 1 else ("c", g)
        if a == 2:
            k = self.symbol(g)
            return ("y", g, (j + 1) % k if letter == 2 else (j - 1) % k)
        return vertex

    def token(self, vertex) -> str:
        if vertex[0] == "c":
            return f"c({word_to_str(vertex[1])})"
        return f"y({word_to_str(vertex[1])};{vertex[2]})"


def psi_oracle(point: SubshiftPoint) -> PsiOracle:
    return point.space.psi(point.basepoint)


def translate_set(alphabet: int, rank: int) -> list[Word]:
    """All reduced words of length <= alphabet size, shortlex, identity
    first: conjugating an encoded subgroup by these reaches every root of
    its orbit."""
    return words_upto(rank, alphabet)


def in_Z(oracle: SchreierOracle, space: SubshiftSpace, radius: int) -> bool:
    """Truncated membership in the encoded set: the radius-`radius` ball
    must match the ball of some configuration's encoding. False is
    definitive; True is consistent-up-to-radius."""
    if radius < 2:
        raise DomainError("radius must be >= 2 to see the cycle structure")
    b = ball(oracle, radius)
    return any(root_isomorphic(b, cb) for cb in space.candidate_balls(radius))


def upsilon(oracle: SchreierOracle, space: SubshiftSpace, radius: int):
    """Retract a subgroup into the encoded set: conjugate by the first
    translate that lands there. Returns (retracted oracle, translate word).

    Raises NotInYError when no translate passes, AmbiguityError when the
    chosen translate fails a recheck at radius + 2 (raise the radius)."""
    for f in translate_set(space.alphabet, space.rank):
        cand = conjugate(oracle, f)
        if in_Z(cand, space, radius):
            if not in_Z(cand, space, radius + 2):
                raise AmbiguityError(
                    f"translate {word_to_str(f)} passed at radius {radius} "
                    "but failed the recheck; use a larger radius"
                )
            return cand, f
    raise NotInYError(
        f"no translate of length <= {space.alphabet} lands in the encoded set"
    )


def decode(oracle: SchreierOracle, radius: int, symbol_cap: int = 4096) -> dict:
    """Read the configuration pattern off an encoded subgroup's graph: the
    symbol at g is the s2-cycle length at the subdivision vertex of
    (g, g.s1), for all g with |g| <= radius - 2.

    The caller is responsible for membership in the encoded set; malformed
    cycle structure raises NotInZError."""
    pattern: dict = {}
    try:
        for g in words_upto(oracle.rank, max(radius - 2, 0)):
            u = trace(oracle, phi_word(g) + (1,))
            v = oracle.neighbor(u, 2)
            count = 1
            while v != u:
                if oracle.neighbor(v, 1) != v:
                    raise NotInZError(
                        f"cycle vertex at {word_to_str(g)} lacks its s1-loop"
                    )
                v = oracle.neighbor(v, 2)
                count += 1
                if count > symbol_cap:
                    raise NotInZError(
                        f"no s2-cycle closes at {word_to_str(g)} "
                        f"within {symbol_cap} steps"
                    )
            pattern[g] = count
    except HorizonError as e:
        raise NotInZError(
            f"walk left the stored graph while decoding: {e}"
        ) from None
    return pattern


def point_class_code(space: SubshiftSpace, q: int) -> tuple:
    """Canonical code of the labeled orbit graph rooted at q; equal codes
    <=> the two basepoints define the same configuration."""
    got = space._pc.get(q)
    if got is not None:
        return got
    action = space.action
    order = {q: 0}
    seq = [q]
    i = 0
    while i < len(seq):
        v = seq[i]
        i += 1
        for k in range(action.rank):
            for w in (action.perms[k][v], action.inv[k][v]):
                if w not in order:
                    order[w] = len(seq)
                    seq.append(w)
    rows = tuple(
        tuple(order[action.perms[k][v]] for k in range(action.rank))
        for v in seq
    )
    labels = tuple(space.labels[v] for v in seq)
    code = ("pc", action.rank, space.alphabet, len(seq), labels, rows)
    space._pc[q] = code
    return code


def encoded_root_key(space: SubshiftSpace, q: int, vertex) -> tuple:
    """Canonical key of the encoded graph of basepoint q re-rooted at
    `vertex`; equal keys <=> equal subgroups. Cayley roots give
    ("cay", 0, pc); cycle roots record the s2-distance to their subdivision
    vertex as ("cyc", k, pc)."""
    kind = vertex[0]
    if kind == "c":
        h = vertex[1]
        return ("cay", 0, point_class_code(space, space.action.act(q, h)))
    _, h, j = vertex
    base = space.action.act(q, h)
    sym = space.labels[base]
    return ("cyc", (-j) % sym, point_class_code(space, base))


def _check_invariant_eta(space: SubshiftSpace, eta: dict) -> None:
    action = space.action
    for qq in range(action.n):
        for k in range(action.rank):
            if eta[qq] != eta[action.perms[k][qq]]:
                raise DomainError(
                    "eta is not invariant under the finite action"
                )


def lambda_pushforward(space: SubshiftSpace, eta: dict | None = None):
    """Exact translate pushforward of an invariant configuration law.

    eta maps points to rational masses (default uniform). Returns
    (measure, reps): an AtomicMeasure over encoded-subgroup keys giving
    every preimage of the retraction the full mass of its target, and a
    representative (basepoint, vertex) per atom for conjugation checks.
    Restricted to the encoded set the measure equals the pushforward of
    eta, and it is exactly conjugation-invariant when eta is invariant.
    """
    action = space.action
    if eta is None:
        eta = {q: Fraction(1, action.n) for q in range(action.n)}
    else:
        eta = {q: Fraction(eta[q]) for q in range(action.n)}
    _check_invariant_eta(space, eta)

    classes: dict = {}
    for q in range(action.n):
        pc = point_class_code(space, q)
        rec = classes.get(pc)
        if rec is None:
            classes[pc] = [q, eta[q]]
        else:
            rec[1] += eta[q]

    L = translate_set(space.alphabet, space.rank)
    lam = AtomicMeasure()
    reps: dict = {}
    for pc, (q, mass) in sorted(classes.items(), key=lambda kv: kv[0]):
        if mass == 0:
            continue
        target = ("cay", 0, pc)
        psi = space.psi(q)
        seen: set = set()
        for f in L:
            u = trace(psi, inverse_word(f))
            key = encoded_root_key(space, q, u)
            if key in seen:
                continue
            seen.add(key)
            if _retraction_key(space, psi, q, u) == target:
                lam.add(key, mass)
                reps.setdefault(key, (q, u))
    return lam, reps


def _retraction_key(space, psi: PsiOracle, q: int, u) -> tuple:
    """Key of the retraction of the subgroup rooted at u: conjugate by the
    first translate whose root is a Cayley vertex (decidable here because
    the graph is an encoded configuration)."""
    for f in translate_set(space.alphabet, space.rank):
        v = u
        for l in inverse_word(f):
            v = psi.neighbor(v, l)
        if v[0] == "c":
            return encoded_root_key(space, q, v)
    raise AssertionError("every encoded-graph vertex retracts within L")


def lambda_conjugate(space: SubshiftSpace, lam: AtomicMeasure, reps: dict,
                     letter: int) -> AtomicMeasure:
    """Pushforward of the translate measure under conjugation by one
    generator letter: each atom's root moves one step along the inverse."""
    out = AtomicMeasure()
    for key, mass in lam.data.items():
        q, u = reps[key]
        v = space.psi(q).neighbor(u, -letter)
        out.add(encoded_root_key(space, q, v), mass)
    return out


def random_subshift_space(n_points: int, rank: int, alphabet: int,
                          seed: int) -> SubshiftSpace:
    rng = KeyedRng(seed, "subshift")
    perms = tuple(rng.permutation(n_points) for _ in range(rank))
    labels = tuple(1 + rng.randrange(alphabet) for _ in range(n_points))
    return SubshiftSpace(FiniteAction(n_points, perms), labels, alphabet)


def parse_subshift(text: str):
    """Subshift file: alphabet/points/perm/label/basepoint lines. Returns
    (SubshiftSpace, basepoint)."""
    from .actions import parse_cycles

    alphabet = None
    n = None
    perms: dict[int, tuple] = {}
    labels: dict[int, int] = {}
    basepoint = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "alphabet":
            alphabet = int(parts[1])
        elif parts[0] == "points":
            n = int(parts[1])
        elif parts[0] == "perm":
            if n is None:
                raise DomainError("'points' must precede 'perm' lines")
            head, _, cyc = line.partition(":")
            gen = head.split()[1]
            perms[int(gen[1:])] = parse_cycles(cyc, n)
        elif parts[0] == "label":
            labels[int(parts[1])] = int(parts[2])
        elif parts[0] == "basepoint":
            basepoint = int(parts[1])
        else:
            raise DomainError(f"line {lineno}: cannot parse {line!r}")
    if alphabet is None or n is None or not perms:
        raise DomainError("subshift file needs alphabet, points and perms")
    rank = max(perms)
    if sorted(perms) != list(range(1, rank + 1)):
        raise DomainError("perm lines must cover s1..sr without gaps")
    if sorted(labels) != list(range(n)):
        raise DomainError("need a label line for every point")
    space = SubshiftSpace(
        FiniteAction(n, tuple(perms[i] for i in range(1, rank + 1))),
        tuple(labels[i] for i in range(n)),
        alphabet,
    )
    if not 0 <= basepoint < n:
        raise DomainError("basepoint out of range")
    return space, basepoint


def emit_subshift(space: SubshiftSpace, basepoint: int = 0) -> str:
    from .actions import format_cycles

    lines = [f"alphabet {space.alphabet}", f"points {space.action.n}"]
    for i, p in enumerate(space.action.perms, start=1):
        lines.append(f"perm s{i}: {format_cycles(p)}")
    for q, s in enumerate(space.labels):
        lines.append(f"label {q} {s}")
    lines.append(f"basepoint {basepoint}")
    return "\n".join(lines) + "\n"

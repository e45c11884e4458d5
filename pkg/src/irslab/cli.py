"""Command line interface.

Every run is fully determined by its flags: seeds default to 0 (never to
entropy), randomized subcommands echo their effective configuration as
'#'-comment header lines, and output ordering never depends on hash or map
iteration order. Exit codes: 0 success, 1 domain error, 2 budget exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .actions import (
    first_return,
    is_totally_nonfree,
    parse_action,
    stab_pushforward_law,
)
from .analysis import (
    aut_count,
    cylinder_fingerprint,
    metric,
    oracle_from_code,
)
from .encoding import (
    decode,
    lambda_conjugate,
    lambda_pushforward,
    parse_subshift,
    psi_oracle,
    translate_set,
    upsilon,
)
from .errors import BudgetError, DomainError
from .laws import NormalizerLaw, PointLaw, PoulsenLaw, trivial_law
from .montecarlo import (
    CylinderSpec,
    convergence_sweep,
    estimate_cylinder,
    exact_invariance_rows,
    invariance_report,
    render_invariance,
    render_sweep,
)
from .normalizer import enumerate_normalizer_law, normalizer_oracle
from .oracles import BallBackedOracle, ball, conjugate
from .poulsen import poulsen_oracle
from .randomness import subseed
from .sgr import emit_edgelist, emit_sgr, parse_complete_oracle, parse_sgr
from .words import word_from_str, word_to_str

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse rational {text!r}") from None


def parse_base_spec(spec: str, rank: int, p: Fraction | None):
    """Base/sampler specifications compose right to left:
    trivial | file:<path.sgr> | normalizer:<spec> | biased-normalizer:<spec>
    | poulsen:<spec>. Randomized stages all use the single --p value."""
    if spec == "trivial":
        return trivial_law(rank)
    if spec.startswith("file:"):
        path = spec[5:]
        with open(path, "r", encoding="utf-8") as fh:
            oracle = parse_complete_oracle(fh.read())
        return PointLaw(oracle, f"file:{path}")
    for head, maker in (
        ("normalizer:", lambda inner: NormalizerLaw(inner, _need_p(p))),
        ("biased-normalizer:",
         lambda inner: NormalizerLaw(inner, _need_p(p), biased_root_slot=0)),
        ("poulsen:", lambda inner: PoulsenLaw(inner, _need_p(p))),
    ):
        if spec.startswith(head):
            return maker(parse_base_spec(spec[len(head):], rank, p))
    raise DomainError(f"unknown base spec {spec!r}")


def _need_p(p: Fraction | None) -> Fraction:
    if p is None:
        raise DomainError("this base spec needs --p")
    return p


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(args, **extra) -> str:
    bits = [f"# irslab {args.command}"]
    for key in ("base", "other", "sampler", "p", "seed", "radius",
                "max_radius", "samples", "subshift", "graph", "action"):
        val = getattr(args, key, None)
        if val is not None:
            bits.append(f"{key.replace('_', '-')}={val}")
    for k, v in extra.items():
        bits.append(f"{k}={v}")
    return " ".join(bits) + "\n"


def _load_graph_oracle(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        view = parse_sgr(fh.read())
    if not view.boundary and view.is_complete() and not view.has_stars():
        return view.to_oracle()
    return BallBackedOracle(view)


def _fingerprint_spec(args) -> CylinderSpec:
    words = tuple(word_from_str(w) for w in args.fingerprint.split(","))
    return CylinderSpec(words, args.radius)


def cmd_ball(args) -> int:
    law = parse_base_spec(args.base, args.rank, args.p)
    oracle = law.sample(args.seed)
    view = ball(oracle, args.radius, args.budget)
    body = emit_edgelist(view) if args.format == "edgelist" else emit_sgr(view)
    _write(args, _header(args) + body)
    return EXIT_OK


def cmd_metric(args) -> int:
    law_a = parse_base_spec(args.base, args.rank, args.p)
    law_b = parse_base_spec(args.other, args.rank, args.p)
    a = law_a.sample(args.seed)
    b = law_b.sample(args.other_seed)
    d = metric(a, b, args.max_radius, args.budget)
    out = _header(args)
    if d == 0:
        out += f"d = 0 (<= 1/{args.max_radius + 2})\n"
    else:
        out += f"d = {d.numerator}/{d.denominator}\n"
    _write(args, out)
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    law = parse_base_spec(args.base, args.rank, args.p)
    oracle = law.sample(args.seed)
    fp = cylinder_fingerprint(oracle, args.radius)
    _write(args, _header(args) + "".join(word_to_str(w) + "\n" for w in fp))
    return EXIT_OK


def cmd_aut(args) -> int:
    with open(args.graph, "r", encoding="utf-8") as fh:
        oracle = parse_complete_oracle(fh.read())
    _write(args, f"{aut_count(oracle)}\n")
    return EXIT_OK


def cmd_sample_normalizer(args) -> int:
    base = parse_base_spec(args.base, args.rank, args.p).sample(
        subseed(args.seed, "cli", "base-draw"))
    oracle = normalizer_oracle(base, _need_p(args.p), args.seed)
    view = ball(oracle, args.radius, args.budget)
    _write(args, _header(args) + emit_sgr(view))
    return EXIT_OK


def cmd_sample_poulsen(args) -> int:
    law = parse_base_spec(args.base, args.rank, args.p)
    oracle = poulsen_oracle(law, _need_p(args.p), args.seed)
    view = ball(oracle, args.radius, args.budget)
    _write(args, _header(args) + emit_sgr(view))
    return EXIT_OK


def cmd_enumerate_normalizer(args) -> int:
    law = parse_base_spec(args.base, args.rank, args.p)
    if not law.is_point:
        raise DomainError("enumeration needs a finite point-mass base")
    base = law.oracle
    measure = enumerate_normalizer_law(base, _need_p(args.p), budget=args.budget)
    out = _header(args)
    out += f"atoms {len(measure)} total {measure.total()}\n"
    for i, (code, mass) in enumerate(measure.items_sorted()):
        fp = cylinder_fingerprint(oracle_from_code(code), 2)
        fp_s = "{" + " ".join(word_to_str(w) for w in fp) + "}"
        out += (
            f"atom {i}: mass {mass} vertices {code[1]} "
            f"aut {aut_count(oracle_from_code(code))} fp2 {fp_s}\n"
        )
    if args.check_invariance:
        rows = exact_invariance_rows(measure, args.radius)
        bad = [r for r in rows if r.deviation != 0]
        if bad:
            out += "exact invariance: FAIL\n"
            _write(args, out)
            return EXIT_VERIFY
        out += "exact invariance: PASS\n"
    _write(args, out)
    return EXIT_OK


def cmd_encode(args) -> int:
    with open(args.subshift, "r", encoding="utf-8") as fh:
        space, basepoint = parse_subshift(fh.read())
    if args.basepoint is not None:
        basepoint = args.basepoint
    oracle = psi_oracle(space.point(basepoint))
    view = ball(oracle, args.radius, args.budget)
    _write(args, _header(args, basepoint=basepoint) + emit_sgr(view))
    return EXIT_OK


def cmd_decode(args) -> int:
    oracle = _load_graph_oracle(args.graph)
    pattern = decode(oracle, args.radius)
    out = _header(args)
    for g in sorted(pattern, key=lambda w: (len(w), w)):
        out += f"x({word_to_str(g)}) = {pattern[g]}\n"
    _write(args, out)
    return EXIT_OK


def cmd_check_equivariance(args) -> int:
    from .randomness import KeyedRng
    from .words import words_upto

    with open(args.subshift, "r", encoding="utf-8") as fh:
        space, _ = parse_subshift(fh.read())
    rng = KeyedRng(args.seed, "equivariance")
    candidates = [w for w in words_upto(space.rank, args.max_word_len) if w]
    from .analysis import root_isomorphic
    from .words import phi_word

    failures = 0
    for _ in range(args.trials):
        q = rng.randrange(space.action.n)
        f = candidates[rng.randrange(len(candidates))]
        x = space.point(q)
        lhs = ball(psi_oracle(x.shifted(f)), args.radius, args.budget)
        rhs = ball(conjugate(psi_oracle(x), phi_word(f)), args.radius, args.budget)
        if not root_isomorphic(lhs, rhs):
            failures += 1
    out = _header(args) + (
        f"equivariance trials {args.trials} failures {failures}: "
        + ("PASS" if failures == 0 else "FAIL") + "\n"
    )
    _write(args, out)
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def cmd_upsilon(args) -> int:
    oracle = _load_graph_oracle(args.graph)
    with open(args.subshift, "r", encoding="utf-8") as fh:
        space, _ = parse_subshift(fh.read())
    retracted, f = upsilon(oracle, space, args.radius)
    out = _header(args) + f"translate {word_to_str(f)}\n"
    out += emit_sgr(ball(retracted, args.radius, args.budget))
    _write(args, out)
    return EXIT_OK


def cmd_lambda(args) -> int:
    with open(args.subshift, "r", encoding="utf-8") as fh:
        space, _ = parse_subshift(fh.read())
    lam, reps = lambda_pushforward(space)
    out = _header(args)
    out += f"translates {len(translate_set(space.alphabet, space.rank))}\n"
    out += f"atoms {len(lam)} total {lam.total()}\n"
    for i, (key, mass) in enumerate(lam.items_sorted()):
        kind, k, _pc = key
        out += f"atom {i}: kind {kind} offset {k} mass {mass}\n"
    ok = True
    from .words import letters_ordered

    for l in letters_ordered(space.rank):
        if lambda_conjugate(space, lam, reps, l) != lam:
            ok = False
    out += "conjugation invariance: " + ("PASS" if ok else "FAIL") + "\n"
    _write(args, out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_stab_law(args) -> int:
    with open(args.action, "r", encoding="utf-8") as fh:
        action = parse_action(fh.read())
    law = stab_pushforward_law(action)
    out = _header(args) + f"atoms {len(law)} total {law.total()}\n"
    for i, (code, mass) in enumerate(law.items_sorted()):
        fp = cylinder_fingerprint(oracle_from_code(code), 2)
        fp_s = "{" + " ".join(word_to_str(w) for w in fp) + "}"
        out += f"atom {i}: mass {mass} vertices {code[1]} fp2 {fp_s}\n"
    _write(args, out)
    return EXIT_OK


def cmd_tnf_check(args) -> int:
    with open(args.action, "r", encoding="utf-8") as fh:
        action = parse_action(fh.read())
    flag = is_totally_nonfree(action)
    _write(args, _header(args) + f"totally-nonfree: {str(flag).lower()}\n")
    return EXIT_OK


def cmd_first_return(args) -> int:
    with open(args.action, "r", encoding="utf-8") as fh:
        action = parse_action(fh.read())
    if not 1 <= args.gen <= action.rank:
        raise DomainError(f"generator index {args.gen} out of range")
    subset = frozenset(int(s) for s in args.subset.split(","))
    fr = first_return(action.perms[args.gen - 1], subset)
    out = _header(args, gen=args.gen, subset=args.subset)
    for y in sorted(fr):
        out += f"{y} -> {fr[y]}\n"
    _write(args, out)
    return EXIT_OK


def cmd_estimate(args) -> int:
    law = parse_base_spec(args.sampler, args.rank, args.p)
    spec = _fingerprint_spec(args)
    rep = estimate_cylinder(law, spec, args.samples, args.seed)
    _write(args, _header(args) + rep.render() + "\n")
    return EXIT_OK


def cmd_invariance(args) -> int:
    law = parse_base_spec(args.sampler, args.rank, args.p)
    rows = invariance_report(law, args.radius, args.samples, args.seed,
                             min_mass=args.min_mass)
    out = _header(args) + render_invariance(rows, args.format)
    breached = [r for r in rows if r.breached(args.z_threshold)]
    out += (
        f"max z-score threshold {args.z_threshold}: "
        + ("PASS" if not breached else f"FAIL ({len(breached)} cells)") + "\n"
    )
    _write(args, out)
    return EXIT_OK if not breached else EXIT_VERIFY


def cmd_sweep(args) -> int:
    base = parse_base_spec(args.base, args.rank, args.p)
    spec = _fingerprint_spec(args)
    p_list = [parse_rational(s) for s in args.p_list.split(",")]
    rows = convergence_sweep(args.construction, base, p_list, spec,
                             args.samples, args.seed)
    _write(args, _header(args) + render_sweep(rows, args.format))
    return EXIT_OK


def _add_common(sp, *, seed=True, rank=True, p=False, budget=True, out=True,
                fmt=False):
    if seed:
        sp.add_argument("--seed", type=int, default=0,
                        help="64-bit seed (default 0, never entropy)")
    if rank:
        sp.add_argument("--rank", type=int, default=2,
                        help="free group rank for synthetic bases (default 2)")
    if p:
        sp.add_argument("--p", type=parse_rational, default=None,
                        help="parameter p as an exact rational, e.g. 1/10")
    if budget:
        sp.add_argument("--budget", type=int, default=10**6,
                        help="vertex budget for lazy exploration")
    if out:
        sp.add_argument("--out", default=None, help="write output to a file")
    if fmt:
        sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp.add_argument("--threads", type=int, default=1,
                    help="accepted for compatibility; sampling is sequential "
                             "and output never depends on it")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="irslab",
        description="Schreier-graph subgroup samplers and their checks",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ball", help="emit a radius-R ball of a base graph")
    sp.add_argument("--base", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--format", choices=("sgr", "edgelist"), default="sgr")
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_ball)

    sp = sub.add_parser("metric", help="local distance between two graphs")
    sp.add_argument("--base", required=True)
    sp.add_argument("--other", required=True)
    sp.add_argument("--max-radius", type=int, required=True)
    sp.add_argument("--other-seed", type=int, default=0)
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_metric)

    sp = sub.add_parser("fingerprint",
                        help="length-limited membership fingerprint")
    sp.add_argument("--base", required=True)
    sp.add_argument("--radius", type=int, required=True)
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_fingerprint)

    sp = sub.add_parser("aut", help="automorphism count of a finite graph")
    sp.add_argument("--graph", required=True)
    _add_common(sp, seed=False, rank=False, budget=False)
    sp.set_defaults(fn=cmd_aut)

    sp = sub.add_parser("sample-normalizer",
                        help="sample the tripling perturbation")
    sp.add_argument("--base", required=True)
    sp.add_argument("--radius", type=int, required=True)
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_sample_normalizer)

    sp = sub.add_parser("sample-poulsen",
                        help="sample the percolation-surgery construction")
    sp.add_argument("--base", required=True)
    sp.add_argument("--radius", type=int, required=True)
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_sample_poulsen)

    sp = sub.add_parser("enumerate-normalizer",
                        help="exact output law over a finite base")
    sp.add_argument("--base", required=True)
    sp.add_argument("--check-invariance", action="store_true")
    sp.add_argument("--radius", type=int, default=2)
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_enumerate_normalizer)

    sp = sub.add_parser("encode", help="encode a configuration as a graph")
    sp.add_argument("--subshift", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--basepoint", type=int, default=None)
    _add_common(sp, rank=False)
    sp.set_defaults(fn=cmd_encode)

    sp = sub.add_parser("decode", help="read a configuration off a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--radius", type=int, required=True)
    _add_common(sp, seed=False, rank=False)
    sp.set_defaults(fn=cmd_decode)

    sp = sub.add_parser("check-equivariance",
                        help="shift-vs-conjugation equivariance trials")
    sp.add_argument("--subshift", required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--max-word-len", type=int, default=3)
    _add_common(sp, rank=False)
    sp.set_defaults(fn=cmd_check_equivariance)

    sp = sub.add_parser("upsilon",
                        help="retract a subgroup into the encoded set")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--subshift", required=True)
    sp.add_argument("--radius", type=int, required=True)
    _add_common(sp, seed=False, rank=False)
    sp.set_defaults(fn=cmd_upsilon)

    sp = sub.add_parser("lambda",
                        help="exact translate pushforward of a configuration law")
    sp.add_argument("--subshift", required=True)
    _add_common(sp, seed=False, rank=False)
    sp.set_defaults(fn=cmd_lambda)

    sp = sub.add_parser("stab-law", help="stabilizer pushforward law")
    sp.add_argument("--action", required=True)
    _add_common(sp, seed=False, rank=False, budget=False)
    sp.set_defaults(fn=cmd_stab_law)

    sp = sub.add_parser("tnf-check", help="totally-non-free test")
    sp.add_argument("--action", required=True)
    _add_common(sp, seed=False, rank=False, budget=False)
    sp.set_defaults(fn=cmd_tnf_check)

    sp = sub.add_parser("first-return", help="first-return map on a subset")
    sp.add_argument("--action", required=True)
    sp.add_argument("--gen", type=int, required=True)
    sp.add_argument("--subset", required=True,
                    help="comma-separated points, e.g. 0,2")
    _add_common(sp, seed=False, rank=False, budget=False)
    sp.set_defaults(fn=cmd_first_return)

    sp = sub.add_parser("estimate", help="Monte Carlo cylinder mass")
    sp.add_argument("--sampler", required=True)
    sp.add_argument("--fingerprint", default="e",
                    help="comma-separated words, e.g. 'e,s2,s2^-1'")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    _add_common(sp, p=True)
    sp.set_defaults(fn=cmd_estimate)

    sp = sub.add_parser("invariance", help="conjugation-invariance z-table")
    sp.add_argument("--sampler", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--min-mass", type=parse_rational, default=Fraction(1, 100))
    sp.add_argument("--z-threshold", type=float, default=4.0)
    _add_common(sp, p=True, fmt=True)
    sp.set_defaults(fn=cmd_invariance)

    sp = sub.add_parser("sweep", help="small-p convergence sweep")
    sp.add_argument("--construction", choices=("poulsen", "normalizer"),
                    default="poulsen")
    sp.add_argument("--base", required=True)
    sp.add_argument("--p-list", required=True,
                    help="comma-separated rationals, e.g. 0.2,0.1,0.05,0.01")
    sp.add_argument("--fingerprint", default="e")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    _add_common(sp, p=True, fmt=True)
    sp.set_defaults(fn=cmd_sweep)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_DOMAIN if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

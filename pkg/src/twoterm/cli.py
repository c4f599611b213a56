"""Command line interface: verify, construct, check, random.

All input and output is UTF-8 JSON with sorted keys and canonical
rational strings, so identical invocations produce identical bytes.
Exit codes: 0 when the requested report passes or a construction
succeeds, 1 when a check fails or a construction gate rejects its
input, 2 for unreadable files, malformed schemas, or unsupported
dimensions.  Random generation only composes constructions that
preserve validity, so generated instances always verify; cone
instances copy a sparse product found by exact constraint checking
into both grades with the identity differential.
"""

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction

from .assoc2 import (
    OperatorPair,
    StrictAssoc2Algebra,
    derivation_check,
    prelie_from_derivation,
    prelie_from_rb0,
    prelie_from_rb1,
    rb_weight_check,
    verify_assoc2,
)
from .bialg import (
    Cobracket,
    RElement,
    Tau,
    bialgebra_check,
    canonical_solution,
    coboundary_cobracket,
    cocycle_check,
    cybe_check,
    cybe_oop_equivalence,
    dual_from_cobracket,
    equivalences_check,
    manin_standard_assemble,
    manin_triple_check,
    matched_pair_prelie2_assemble,
    matched_pair_prelie2_check,
    solution_from_o_operator,
)
from .exact_core import InvalidStructureError, Mat, ShapeError, Tensor3, rat
from .graded import ChainMapPair, TwoTermComplex, dual_complex, set_dtensor_flip
from .lie2 import (
    GradedSubspace,
    Rep2,
    StrictLie2Algebra,
    SymplecticForm,
    coadjoint_rep,
    matched_pair_lie2_assemble,
    matched_pair_lie2_check,
    o_operator_check,
    parakahler_check,
    prelie_from_symplectic,
    semidirect_lie2,
    verify_lie2,
)
from .prelie2 import (
    PreLieAlgebra,
    StrictPreLie2Algebra,
    collapse,
    coregular_rep,
    left_rep,
    prelie_from_o_operator,
    regular_rep,
    semidirect_prelie2,
    subadjacent,
    verify_prelie,
    verify_prelie2,
    zero_prelie_rep,
)


class CliError(Exception):
    """Input problem surfaced to the shell with a fixed exit code."""

    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# serialization helpers

_KINDS = {
    "assoc2": (StrictAssoc2Algebra.from_json, verify_assoc2),
    "lie2": (StrictLie2Algebra.from_json, verify_lie2),
    "prelie2": (StrictPreLie2Algebra.from_json, verify_prelie2),
}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _digest(obj) -> str:
    return hashlib.sha256(_dumps(obj).encode("utf-8")).hexdigest()[:16]


def _load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except (OSError, ValueError) as err:
        raise CliError(f"cannot read {path}: {err}")
    if not isinstance(obj, dict):
        raise CliError(f"{path}: expected a JSON object")
    return obj


def _algebra_from_obj(obj: dict):
    kind = obj.get("kind")
    if kind not in _KINDS:
        raise CliError(f"unknown or missing kind tag: {kind!r}")
    return kind, _KINDS[kind][0](obj)


def _typed_algebra(obj: dict, kind: str):
    found, algebra = _algebra_from_obj(obj)
    if found != kind:
        raise CliError(f"expected a {kind} file, found {found}")
    return algebra


def _algebra_obj(kind: str, algebra, provenance=None) -> dict:
    out = {"kind": kind}
    out.update(algebra.to_json())
    if provenance is not None:
        out["metadata"] = {"provenance": provenance}
    return out


def _mat(rows, what: str) -> Mat:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ShapeError(f"{what}: expected a nonempty list of rows")
    return Mat.from_lists(rows, len(rows), len(rows[0]))


def _chain_map(obj: dict) -> ChainMapPair:
    try:
        f0, f1 = obj["f0"], obj["f1"]
    except (KeyError, TypeError):
        raise ShapeError("operator file must carry f0 and f1")
    return ChainMapPair(_mat(f0, "f0"), _mat(f1, "f1"))


def _symplectic(obj: dict) -> SymplecticForm:
    try:
        w1, w2 = obj["omega1"], obj["omega2"]
    except (KeyError, TypeError):
        raise ShapeError("form file must carry omega1 and omega2")
    return SymplecticForm(_mat(w1, "omega1"), _mat(w2, "omega2"))


def _subspace(obj: dict) -> GradedSubspace:
    try:
        span0, span1 = obj["span0"], obj["span1"]
    except (KeyError, TypeError):
        raise ShapeError("subspace file must carry span0 and span1")
    return GradedSubspace(span0, span1)


def _provenance(verb: str, objs) -> dict:
    return {"verb": verb, "inputs": [_digest(o) for o in objs]}


def _emit(obj, args) -> None:
    text = _dumps(obj)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _inputs(args, count: int, verb: str):
    if len(args.inputs) != count:
        raise CliError(f"{verb} expects {count} input file(s), got {len(args.inputs)}")
    return [_load(p) for p in args.inputs]


# ---------------------------------------------------------------------------
# bundled instances

def fixture_a() -> StrictPreLie2Algebra:
    """Abelian 1|1 instance with zero differential."""
    return StrictPreLie2Algebra.abelian(TwoTermComplex(1, 1))


def fixture_b() -> StrictPreLie2Algebra:
    """1|1 idempotent instance: d = id, e.e = e carried into both grades."""
    return _cone_algebra(1, {(0, 0, 0): Fraction(1)})


def fixture_c() -> StrictPreLie2Algebra:
    """2|2 instance: d = id, e1.e2 = e2 carried into both grades."""
    return _cone_algebra(2, {(0, 1, 1): Fraction(1)})


def _cone_algebra(n: int, entries: dict) -> StrictPreLie2Algebra:
    cx = TwoTermComplex(n, n, Mat.identity(n))
    return StrictPreLie2Algebra(
        cx,
        Tensor3((n, n, n), entries),
        Tensor3((n, n, n), entries),
        Tensor3((n, n, n), entries),
    )


# ---------------------------------------------------------------------------
# verify

def _cmd_verify(args) -> int:
    obj = _load(args.file)
    if "kind" in obj and obj["kind"] != args.kind:
        raise CliError(f"file is tagged {obj['kind']!r}, not {args.kind!r}")
    algebra = _KINDS[args.kind][0](obj)
    report = _KINDS[args.kind][1](algebra)
    _emit(report.to_json(), args)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# construct

def _construct_subadjacent(args):
    (obj,) = _inputs(args, 1, "subadjacent")
    a = _typed_algebra(obj, "prelie2")
    return _algebra_obj("lie2", subadjacent(a), _provenance("subadjacent", [obj]))


def _construct_semidirect(args):
    (obj,) = _inputs(args, 1, "semidirect")
    kind, algebra = _algebra_from_obj(obj)
    if kind == "lie2":
        out = semidirect_lie2(algebra, coadjoint_rep(algebra))
    elif kind == "prelie2":
        out = semidirect_prelie2(algebra, coregular_rep(algebra))
    else:
        raise CliError("semidirect supports lie2 and prelie2 inputs")
    return _algebra_obj(kind, out, _provenance("semidirect", [obj]))


def _construct_dual(args):
    aobj, cobj = _inputs(args, 2, "dual")
    a = _typed_algebra(aobj, "prelie2")
    cb = Cobracket.from_json(cobj, a.n0, a.n1)
    return _algebra_obj("prelie2", dual_from_cobracket(a, cb), _provenance("dual", [aobj, cobj]))


def _construct_collapse(args):
    (obj,) = _inputs(args, 1, "collapse")
    a = _typed_algebra(obj, "prelie2")
    out = {"kind": "prelie"}
    out.update(collapse(a).to_json())
    out["metadata"] = {"provenance": _provenance("collapse", [obj])}
    return out


def _construct_manin(args):
    if len(args.inputs) not in (1, 2):
        raise CliError("manin expects one or two input file(s)")
    objs = [_load(p) for p in args.inputs]
    a = _typed_algebra(objs[0], "prelie2")
    if len(objs) == 2:
        a_star = _typed_algebra(objs[1], "prelie2")
    else:
        a_star = StrictPreLie2Algebra.abelian(dual_complex(a.complex))
    candidate, _ = manin_standard_assemble(a, a_star)
    return _algebra_obj("prelie2", candidate, _provenance("manin", objs))


def _construct_matched_assemble(args):
    left, right = _inputs(args, 2, "matched-assemble")
    kind, first = _algebra_from_obj(left)
    second = _typed_algebra(right, kind)
    if kind == "prelie2":
        out = matched_pair_prelie2_assemble(
            first, second, coregular_rep(first), coregular_rep(second)
        )
    elif kind == "lie2":
        out = matched_pair_lie2_assemble(
            first, second, coadjoint_rep(first), coadjoint_rep(second)
        )
    else:
        raise CliError("matched-assemble supports lie2 and prelie2 inputs")
    return _algebra_obj(kind, out, _provenance("matched-assemble", [left, right]))


def _construct_from_symplectic(args):
    gobj, fobj = _inputs(args, 2, "prelie-from-symplectic")
    g = _typed_algebra(gobj, "lie2")
    out = prelie_from_symplectic(g, _symplectic(fobj))
    return _algebra_obj("prelie2", out, _provenance("prelie-from-symplectic", [gobj, fobj]))


def _construct_from_rb(args, weight_one: bool):
    aobj, robj = _inputs(args, 2, "prelie-from-rb1" if weight_one else "prelie-from-rb0")
    a = _typed_algebra(aobj, "assoc2")
    op = OperatorPair.from_json(robj, a.n0, a.n1)
    out = prelie_from_rb1(a, op) if weight_one else prelie_from_rb0(a, op)
    verb = "prelie-from-rb1" if weight_one else "prelie-from-rb0"
    return _algebra_obj("prelie2", out, _provenance(verb, [aobj, robj]))


def _construct_from_derivation(args):
    aobj, dobj = _inputs(args, 2, "prelie-from-derivation")
    a = _typed_algebra(aobj, "assoc2")
    dop = OperatorPair.from_json(dobj, a.n0, a.n1)
    out = prelie_from_derivation(a, dop, rat(args.scalar))
    return _algebra_obj("prelie2", out, _provenance("prelie-from-derivation", [aobj, dobj]))


def _operator_setup(args, verb: str):
    gobj, tobj = _inputs(args, 2, verb)
    g = _typed_algebra(gobj, "lie2")
    t = _chain_map(tobj)
    if args.rep:
        rep = Rep2.from_json(_load(args.rep))
    else:
        rep = coadjoint_rep(g)
    return g, rep, t, [gobj, tobj]


def _construct_from_oop(args):
    g, rep, t, objs = _operator_setup(args, "prelie-from-oop")
    out = prelie_from_o_operator(g, rep, t)
    return _algebra_obj("prelie2", out, _provenance("prelie-from-oop", objs))


def _construct_canonical_r(args):
    (obj,) = _inputs(args, 1, "canonical-r")
    a = _typed_algebra(obj, "prelie2")
    ambient, r = canonical_solution(a)
    return {
        "kind": "solution",
        "algebra": _algebra_obj("prelie2", ambient),
        "r": r.to_json(),
        "metadata": {"provenance": _provenance("canonical-r", [obj])},
    }


def _construct_solution_from_oop(args):
    g, rep, t, objs = _operator_setup(args, "solution-from-oop")
    ambient, r = solution_from_o_operator(g, rep, t)
    return {
        "kind": "solution",
        "algebra": _algebra_obj("prelie2", ambient),
        "r": r.to_json(),
        "metadata": {"provenance": _provenance("solution-from-oop", objs)},
    }


_CONSTRUCT = {
    "subadjacent": _construct_subadjacent,
    "semidirect": _construct_semidirect,
    "dual": _construct_dual,
    "collapse": _construct_collapse,
    "manin": _construct_manin,
    "matched-assemble": _construct_matched_assemble,
    "prelie-from-symplectic": _construct_from_symplectic,
    "prelie-from-rb0": lambda args: _construct_from_rb(args, weight_one=False),
    "prelie-from-rb1": lambda args: _construct_from_rb(args, weight_one=True),
    "prelie-from-derivation": _construct_from_derivation,
    "prelie-from-oop": _construct_from_oop,
    "canonical-r": _construct_canonical_r,
    "solution-from-oop": _construct_solution_from_oop,
}


def _cmd_construct(args) -> int:
    _emit(_CONSTRUCT[args.verb](args), args)
    return 0


# ---------------------------------------------------------------------------
# check

def _solution_args(args, verb: str):
    """Accept either a bundled solution file or algebra + r (+ tau)."""
    if not args.inputs:
        raise CliError(f"{verb} expects input file(s)")
    first = _load(args.inputs[0])
    if first.get("kind") == "solution":
        if len(args.inputs) != 1:
            raise CliError(f"{verb}: a solution file stands alone")
        algebra_obj = first.get("algebra")
        if not isinstance(algebra_obj, dict) or "r" not in first:
            raise CliError("solution file must carry algebra and r")
        a = _typed_algebra(algebra_obj, "prelie2")
        r = RElement.from_json(first["r"], a.n0, a.n1)
        return a, r, Tau.zeros(a.n1)
    if len(args.inputs) not in (2, 3):
        raise CliError(f"{verb} expects a solution file or algebra + r (+ tau)")
    a = _typed_algebra(first, "prelie2")
    r = RElement.from_json(_load(args.inputs[1]), a.n0, a.n1)
    if len(args.inputs) == 3:
        tau = Tau.from_json(_load(args.inputs[2]), a.n1)
    else:
        tau = Tau.zeros(a.n1)
    return a, r, tau


def _check_cybe(args):
    a, r, tau = _solution_args(args, "cybe")
    return cybe_check(a, r, tau)


def _check_cybe_oop_equiv(args):
    a, r, _ = _solution_args(args, "cybe-oop-equiv")
    return cybe_oop_equivalence(a, r)


def _check_cocycle(args):
    aobj, cobj = _inputs(args, 2, "cocycle")
    a = _typed_algebra(aobj, "prelie2")
    return cocycle_check(a, Cobracket.from_json(cobj, a.n0, a.n1))


def _pair_of_prelie(args, verb: str):
    left, right = _inputs(args, 2, verb)
    return _typed_algebra(left, "prelie2"), _typed_algebra(right, "prelie2")


def _check_bialgebra(args):
    a, a_star = _pair_of_prelie(args, "bialgebra")
    return bialgebra_check(a, a_star)


def _check_matched_pair(args):
    left, right = _inputs(args, 2, "matched-pair")
    kind, first = _algebra_from_obj(left)
    second = _typed_algebra(right, kind)
    if kind == "prelie2":
        return matched_pair_prelie2_check(
            first, second, coregular_rep(first), coregular_rep(second)
        )
    if kind == "lie2":
        return matched_pair_lie2_check(
            first, second, coadjoint_rep(first), coadjoint_rep(second)
        )
    raise CliError("matched-pair supports lie2 and prelie2 inputs")


def _check_manin_triple(args):
    a, a_star = _pair_of_prelie(args, "manin-triple")
    return manin_triple_check(a, a_star)


def _check_parakahler(args):
    gobj, fobj, pobj, mobj = _inputs(args, 4, "parakahler")
    g = _typed_algebra(gobj, "lie2")
    return parakahler_check(g, _symplectic(fobj), _subspace(pobj), _subspace(mobj))


def _check_oop(args):
    g, rep, t, _ = _operator_setup(args, "oop")
    return o_operator_check(g, rep, t)


def _check_rb_weight(args):
    aobj, robj = _inputs(args, 2, "rb-weight")
    a = _typed_algebra(aobj, "assoc2")
    op = OperatorPair.from_json(robj, a.n0, a.n1)
    return rb_weight_check(a, op, rat(args.weight))


def _check_derivation(args):
    aobj, dobj = _inputs(args, 2, "derivation")
    a = _typed_algebra(aobj, "assoc2")
    return derivation_check(a, OperatorPair.from_json(dobj, a.n0, a.n1))


def _check_equivalences(args):
    a, a_star = _pair_of_prelie(args, "equivalences")
    return equivalences_check(a, a_star)


_CHECK = {
    "cybe": _check_cybe,
    "cocycle": _check_cocycle,
    "bialgebra": _check_bialgebra,
    "matched-pair": _check_matched_pair,
    "manin-triple": _check_manin_triple,
    "parakahler": _check_parakahler,
    "oop": _check_oop,
    "rb-weight": _check_rb_weight,
    "derivation": _check_derivation,
    "equivalences": _check_equivalences,
    "cybe-oop-equiv": _check_cybe_oop_equiv,
}


def _cmd_check(args) -> int:
    report = _CHECK[args.verb](args)
    _emit(report.to_json(), args)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# random generation

def _parse_dims(text, default):
    if not text:
        return default
    parts = text.split(",")
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise CliError(f"bad dims: {text!r}")
    if len(numbers) == 1:
        numbers = numbers * 2
    if len(numbers) != 2 or any(n < 0 for n in numbers):
        raise CliError(f"bad dims: {text!r}")
    return tuple(numbers)


def _solve_cone(n: int, rng: random.Random) -> StrictPreLie2Algebra:
    """Sparse product on n letters satisfying the quadratic constraints,
    found by seeded search with exact re-verification, copied into both
    grades along the identity differential."""
    while True:
        entries = {}
        for _ in range(rng.randint(1, 2)):
            key = (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            entries[key] = Fraction(rng.choice([-2, -1, 1, 2]))
        if verify_prelie(PreLieAlgebra(n, Tensor3((n, n, n), entries))).ok:
            return _cone_algebra(n, entries)


def _random_base(rng: random.Random) -> StrictPreLie2Algebra:
    pick = rng.randrange(4)
    if pick == 0:
        return fixture_a()
    if pick == 1:
        return fixture_b()
    if pick == 2:
        return fixture_c()
    return _solve_cone(2, rng)


def _random_abelian(rng, dims):
    n0, n1 = dims if dims else (1, 1)
    return StrictPreLie2Algebra.abelian(TwoTermComplex(n0, n1))


def _random_cone(rng, dims):
    n0, n1 = dims if dims else (2, 2)
    if n0 != n1 or not 1 <= n0 <= 2:
        raise CliError("unsupported dims for family cone (need n,n with n <= 2)")
    return _solve_cone(n0, rng)


def _random_semidirect(rng, dims):
    base = _random_base(rng)
    pick = rng.randrange(3)
    if pick == 0:
        rep = coregular_rep(base)
    elif pick == 1:
        rep = regular_rep(base)
    else:
        rep = zero_prelie_rep(base, dual_complex(base.complex))
    return semidirect_prelie2(base, rep)


def _random_matched(rng, dims):
    base = _random_base(rng)
    ambient, r = canonical_solution(base)
    cb = coboundary_cobracket(ambient, r, Tau.zeros(ambient.n1))
    a_star = dual_from_cobracket(ambient, cb)
    return matched_pair_prelie2_assemble(
        ambient, a_star, coregular_rep(ambient), coregular_rep(a_star)
    )


def _random_oop_induced(rng, dims):
    base = _random_base(rng)
    g = subadjacent(base)
    scale = Fraction(rng.randint(1, 3))
    t = ChainMapPair(Mat.identity(g.n0).scale(scale), Mat.identity(g.n1).scale(scale))
    return prelie_from_o_operator(g, left_rep(base), t)


_FAMILIES = {
    "abelian": _random_abelian,
    "cone": _random_cone,
    "semidirect": _random_semidirect,
    "matched": _random_matched,
    "oop-induced": _random_oop_induced,
}


def generate(family: str, dims, seed: int) -> StrictPreLie2Algebra:
    """Deterministic valid instance for (family, dims, seed)."""
    if family not in _FAMILIES:
        raise CliError(f"unknown family: {family!r}")
    rng = random.Random(seed)
    algebra = _FAMILIES[family](rng, dims)
    report = verify_prelie2(algebra)
    if not report.ok:
        raise InvalidStructureError("generator produced an invalid instance", report)
    return algebra


def _cmd_random(args) -> int:
    dims = _parse_dims(args.dims, None)
    algebra = generate(args.family, dims, args.seed)
    out = _algebra_obj("prelie2", algebra)
    out["metadata"] = {
        "name": f"{args.family}-s{args.seed}",
        "provenance": {
            "dims": list(dims) if dims else None,
            "family": args.family,
            "seed": args.seed,
        },
    }
    _emit(out, args)
    return 0


# ---------------------------------------------------------------------------
# entry points

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON result to this path")
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument(
        "--convention-flip-dtensor",
        action="store_true",
        dest="flip",
        help="use the opposite sign convention for the tensor differential",
    )
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dims", help="dimensions as n or n0,n1")

    parser = argparse.ArgumentParser(
        prog="twoterm",
        description="Exact verification and construction for two-term graded algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", parents=[common])
    p_verify.add_argument("kind", choices=sorted(_KINDS))
    p_verify.add_argument("file")
    p_verify.set_defaults(func=_cmd_verify)

    p_construct = sub.add_parser("construct", parents=[common])
    p_construct.add_argument("verb", choices=sorted(_CONSTRUCT))
    p_construct.add_argument("inputs", nargs="*")
    p_construct.add_argument("--rep", help="representation file for operator verbs")
    p_construct.add_argument("--scalar", default="1", help="scalar for prelie-from-derivation")
    p_construct.set_defaults(func=_cmd_construct)

    p_check = sub.add_parser("check", parents=[common])
    p_check.add_argument("verb", choices=sorted(_CHECK))
    p_check.add_argument("inputs", nargs="*")
    p_check.add_argument("--rep", help="representation file for operator verbs")
    p_check.add_argument("--weight", default="0", help="weight for rb-weight")
    p_check.set_defaults(func=_cmd_check)

    p_random = sub.add_parser("random", parents=[common])
    p_random.add_argument("family", choices=sorted(_FAMILIES))
    p_random.set_defaults(func=_cmd_random)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.flip:
        set_dtensor_flip(True)
    try:
        return args.func(args)
    except CliError as err:
        sys.stdout.write(_dumps({"error": str(err)}))
        return err.code
    except InvalidStructureError as err:
        sys.stdout.write(_dumps({"error": str(err), "report": err.report.to_json()}))
        return 1
    except ShapeError as err:
        sys.stdout.write(_dumps({"error": str(err)}))
        return 2
    finally:
        if args.flip:
            set_dtensor_flip(False)


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()

"""Command-line front end.  Every command reads and writes JSON.

Exit status: 0 on success, 1 on a domain error (singular input, contract
violation, ...), 2 on a usage error (bad flags, malformed JSON).  Errors are
written to stderr as ``{"error": {"code": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import selfcheck
from .biquiver import Biquiver, Representation, arrow_relations, equiv_check
from .commutant import commutant_basis, commutant_dim, commutant_oracle
from .errors import ConsimError
from .exactmat import matrix_from_json, matrix_to_json
from .nilstruct import Partition, to_weyr
from .reductions import (
    BIQUIVER,
    PAIR,
    TUPLE,
    Encoding,
    TupleInstance,
    decode_biquiver,
    decode_commuting_pair,
    decode_tuple,
    encode_biquiver,
    encode_commuting_pair,
    encode_tuple,
    extract_biquiver_witness,
    extract_commuting_witness,
    extract_tuple_witness,
    pair_relation,
    verify_tuple_conditions,
    verify_witness,
)
from .semilinear import MatrixPair, consim_invariants

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from None


def _load_matrix(path: str):
    obj = _load(path)
    if isinstance(obj, dict) and "S" in obj:
        obj = obj["S"]
    return matrix_from_json(obj)


# instance (de)serialization ---------------------------------------------


def instance_to_json(kind: str, inst) -> dict:
    if kind == PAIR:
        X, Y = inst
        return {"kind": PAIR, "X": matrix_to_json(X), "Y": matrix_to_json(Y)}
    if kind == TUPLE:
        return {
            "kind": TUPLE,
            "n": inst.n,
            "Xs": [matrix_to_json(X) for X in inst.Xs],
            "Ys": [matrix_to_json(Y) for Y in inst.Ys],
        }
    return {"kind": BIQUIVER, "biquiver": inst.quiver.to_json(), "representation": inst.to_json()}


def _encode(kind: str, obj: dict, partition) -> Encoding:
    if kind == "pair":
        if partition is not None:
            raise UsageError("--partition applies only to biquiver encodings")
        return encode_commuting_pair(matrix_from_json(obj["X"]), matrix_from_json(obj["Y"]))
    if kind == "tuple":
        if partition is not None:
            raise UsageError("--partition applies only to biquiver encodings")
        inst = TupleInstance(
            int(obj["n"]),
            [matrix_from_json(m) for m in obj.get("Xs", [])],
            [matrix_from_json(m) for m in obj.get("Ys", [])],
        )
        return encode_tuple(inst)
    bq = Biquiver.from_json(obj["biquiver"])
    rep = Representation.from_json(bq, obj["representation"])
    return encode_biquiver(rep, partition)


def _decode(enc: Encoding):
    if enc.kind == PAIR:
        return decode_commuting_pair(enc)
    if enc.kind == TUPLE:
        return decode_tuple(enc)
    if enc.kind == BIQUIVER:
        return decode_biquiver(enc)
    raise UsageError(f"unknown encoding kind {enc.kind!r}")


# commands -----------------------------------------------------------------


def cmd_encode(args) -> dict:
    part = Partition.parse(args.partition) if args.partition else None
    return _encode(args.kind, _load(args.instance), part).to_json()


def cmd_decode(args) -> dict:
    enc = Encoding.from_json(_load(args.encoding))
    return instance_to_json(enc.kind, _decode(enc))


def _pair_of_encodings(args):
    enc = Encoding.from_json(_load(args.encoding))
    enc2 = Encoding.from_json(_load(args.encoding2))
    if enc.kind != enc2.kind:
        raise UsageError(f"encodings differ in kind: {enc.kind} vs {enc2.kind}")
    return enc, enc2, _load_matrix(args.witness)


def cmd_verify_witness(args) -> dict:
    enc, enc2, S = _pair_of_encodings(args)
    return verify_witness(enc, enc2, S)


def cmd_extract_witness(args) -> dict:
    enc, enc2, S = _pair_of_encodings(args)
    checks = verify_witness(enc, enc2, S)
    if not checks["transport_ok"]:
        raise ConsimError("S does not map (J, M) to (J, M'): M S != conj(S) M' or S is singular")
    if enc.kind == PAIR:
        (X, Y), (X2, Y2) = _decode(enc), _decode(enc2)
        C = extract_commuting_witness(S, enc.meta["n"])
        return {"kind": enc.kind, "C": matrix_to_json(C), "relation_ok": pair_relation(C, X, Y, X2, Y2)}
    if enc.kind == TUPLE:
        inst, inst2 = _decode(enc), _decode(enc2)
        C = extract_tuple_witness(S, enc)
        return {"kind": enc.kind, "C": matrix_to_json(C), "conditions_ok": verify_tuple_conditions(C, inst, inst2)}
    rep, rep2 = _decode(enc), _decode(enc2)
    S_list = extract_biquiver_witness(enc, S)
    return {
        "kind": enc.kind,
        "witnesses": [matrix_to_json(Si) for Si in S_list],
        "arrows": arrow_relations(rep, rep2, S_list),
        "equivalent": equiv_check(rep, rep2, S_list),
    }


def cmd_commutant_basis(args) -> dict:
    part = Partition.parse(args.partition)
    complex_dim, real_dim = commutant_dim(part)
    basis = []
    for label, S in commutant_basis(part):
        basis.append({"param": label, "matrix": matrix_to_json(to_weyr(S, part) if args.weyr else S)})
    out = {"partition": part.to_json(), "complex_dim": complex_dim, "real_dim": real_dim, "weyr": args.weyr}
    if args.oracle:
        out["oracle_real_dim"] = commutant_oracle(part).real_dim
    out["basis"] = basis
    return out


def cmd_invariants(args) -> dict:
    obj = _load(args.pair)
    P = MatrixPair(matrix_from_json(obj["first"]), matrix_from_json(obj["second"]))
    return consim_invariants(P, args.depth)


def cmd_selfcheck(args) -> dict:
    report = selfcheck.run(args.seed, args.trials)
    ok = all(not r["failures"] for r in report.values())
    out = {"seed": args.seed, "trials": args.trials, "ok": ok, "checks": report}
    if not ok:
        raise _Failed(out)
    return out


class _Failed(Exception):
    def __init__(self, payload):
        self.payload = payload


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="consim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("encode", help="encode an instance as a matrix pair (J, M)")
    e.add_argument("kind", choices=["pair", "tuple", "biquiver"])
    e.add_argument("instance")
    e.add_argument("--partition", help="p1:q1,p2:q2,... (biquiver only)")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="recover the instance from an encoding")
    d.add_argument("encoding")
    d.set_defaults(func=cmd_decode)

    for name, func, help_ in (
        ("verify-witness", cmd_verify_witness, "check that S maps one encoding to another"),
        ("extract-witness", cmd_extract_witness, "read the source-problem witness out of S"),
    ):
        v = sub.add_parser(name, help=help_)
        v.add_argument("encoding")
        v.add_argument("encoding2")
        v.add_argument("witness")
        v.set_defaults(func=func)

    c = sub.add_parser("commutant-basis", help="basis of {S : conj(S) J = J S}")
    c.add_argument("--partition", required=True)
    c.add_argument("--weyr", action="store_true", help="emit basis matrices after the Weyr rearrangement")
    c.add_argument("--oracle", action="store_true", help="also solve the realified system directly")
    c.set_defaults(func=cmd_commutant_basis)

    i = sub.add_parser("invariants", help="consimilarity invariant profile of a matrix pair")
    i.add_argument("pair")
    i.add_argument("--depth", type=int, default=2)
    i.set_defaults(func=cmd_invariants)

    s = sub.add_parser("selfcheck", help="run seeded property trials")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(func=cmd_selfcheck)
    return p


def _emit(stream, payload: dict) -> None:
    stream.write(json.dumps(payload, indent=2) + "\n")


def _error(code: str, message: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "error": {"code": code, "message": message}}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args)
    except UsageError as exc:
        _emit(sys.stderr, _error("usage_error", str(exc)))
        return 2
    except _Failed as exc:
        _emit(sys.stdout, {"schema_version": SCHEMA_VERSION, **exc.payload})
        return 1
    except ConsimError as exc:
        _emit(sys.stderr, _error(exc.code, str(exc)))
        return 1
    except (KeyError, TypeError, ValueError) as exc:
        _emit(sys.stderr, _error("malformed_input", f"{type(exc).__name__}: {exc}"))
        return 2
    _emit(sys.stdout, {"schema_version": SCHEMA_VERSION, **payload})
    return 0


if __name__ == "__main__":
    sys.exit(main())

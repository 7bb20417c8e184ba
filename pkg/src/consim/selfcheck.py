"""Seeded property trials behind ``consim selfcheck``.

Each check takes a ``random.Random`` and returns ``True`` on success.  Trial
``k`` of a run with seed ``s`` is seeded with the string ``"s:k:check"``, so
results do not depend on which other checks run.
"""

from __future__ import annotations

import random

from . import biquiver as bqm
from .commutant import (
    check_semicommute,
    commutant_dim,
    commutant_oracle,
    extract_params,
    is_nonsingular_structured,
    random_matrix,
    random_nonsingular,
    sample_commutant,
    synthesize_S,
    weyr_triangularity_check,
)
from .exactmat import CMatrix, det, inverse, is_nonsingular, rank
from .nilstruct import Partition, build_J
from .reductions import (
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
    joint_system,
    nonsingular_element,
    pair_relation,
    substrip_occupancy_ok,
    transport_tuple,
    verify_tuple_conditions,
    verify_witness,
    witness_biquiver,
    witness_commuting_pair,
    witness_tuple,
)
from .semilinear import MatrixPair, apply, apply_linear, compose, consim_invariants, consim_transform


def random_partition(rng: random.Random, max_t: int = 3, max_p: int = 5, max_q: int = 3) -> Partition:
    t = rng.randint(1, max_t)
    ps = rng.sample(range(1, max_p + 1), t)
    return Partition([(p, rng.randint(1, max_q)) for p in ps])


def check_exact(rng):
    n = rng.randint(1, 4)
    A = random_nonsingular(rng, n)
    B = random_matrix(rng, n)
    return (
        inverse(inverse(A)) == A
        and (A @ B).conj() == A.conj() @ B.conj()
        and rank(B) == rank(B.conj()) == rank(B.T)
        and (det(B) != 0) == is_nonsingular(B)
    )


def check_semilinear(rng):
    n = rng.randint(1, 3)
    A, B = random_matrix(rng, n), random_matrix(rng, n)
    u = [random_matrix(rng, 1, 1)[0, 0] for _ in range(n)]
    if apply_linear(compose(A, B), u) != apply(A, apply(B, u)):
        return False
    P = MatrixPair(random_matrix(rng, n), random_matrix(rng, n))
    S = random_nonsingular(rng, n)
    return consim_invariants(P, 1) == consim_invariants(consim_transform(P, S), 1)


def check_commutant(rng):
    part = random_partition(rng, max_p=4, max_q=2)
    params = sample_commutant(part, rng.random())
    S = synthesize_S(part, params)
    J = build_J(part)
    if not check_semicommute(J, S):
        return False
    if is_nonsingular_structured(part, params) != is_nonsingular(S):
        return False
    canon = part.canonical()
    if not weyr_triangularity_check(canon, sample_commutant(canon, rng.random())):
        return False
    sol = commutant_oracle(part)
    if sol.real_dim != commutant_dim(part)[1]:
        return False
    return all(synthesize_S(part, extract_params(part, B)) == B for B in sol.basis)


def check_pair(rng):
    n = rng.randint(1, 2)
    X, Y = random_matrix(rng, n), random_matrix(rng, n)
    C = random_nonsingular(rng, n)
    Cbi = inverse(C.conj())
    X2, Y2 = Cbi @ X @ C, Cbi @ Y @ C
    enc, enc2 = encode_commuting_pair(X, Y), encode_commuting_pair(X2, Y2)
    if enc.M.conj() @ enc.J != enc.J @ enc.M or decode_commuting_pair(enc) != (X, Y):
        return False
    if verify_witness(enc, enc2, witness_commuting_pair(C)) != {"commutant_ok": True, "transport_ok": True}:
        return False
    S = nonsingular_element(joint_system(enc.J, enc.M, enc2.M), rng.random())
    return S is not None and pair_relation(extract_commuting_witness(S, n), X, Y, X2, Y2)


def check_tuple(rng):
    n, p, q = rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 2)
    inst = TupleInstance(n, [random_matrix(rng, n) for _ in range(p)], [random_matrix(rng, n) for _ in range(q)])
    C = random_nonsingular(rng, n)
    inst2 = transport_tuple(inst, C)
    enc, enc2 = encode_tuple(inst), encode_tuple(inst2)
    if decode_tuple(enc) != inst or not verify_tuple_conditions(C, inst, inst2):
        return False
    S = witness_tuple(C, enc.part.parts[0][0])
    if not all(verify_witness(enc, enc2, S).values()):
        return False
    S = nonsingular_element(joint_system(enc.J, enc.M, enc2.M), rng.random())
    return S is not None and verify_tuple_conditions(extract_tuple_witness(S, enc), inst, inst2)


def check_biquiver(rng):
    bq = bqm.random_biquiver(rng.random(), max_vertices=3, max_arrows=4)
    dims = tuple(rng.randint(1, 2) for _ in range(bq.vertex_count))
    rep = bqm.random_rep(bq, dims, rng.random())
    S_list = bqm.random_base_change(dims, rng.random())
    rep2 = bqm.base_change(rep, S_list)
    enc = encode_biquiver(rep)
    enc2 = encode_biquiver(rep2, enc.part, enc.placement)
    if decode_biquiver(enc) != rep or not substrip_occupancy_ok(enc.part, enc.M):
        return False
    if not all(verify_witness(enc, enc2, witness_biquiver(enc, S_list)).values()):
        return False
    if enc.part.size > 16:
        return True
    S = nonsingular_element(joint_system(enc.J, enc.M, enc2.M), rng.random())
    return S is not None and bqm.equiv_check(rep, rep2, extract_biquiver_witness(enc, S))


CHECKS = {
    "exactmat": check_exact,
    "semilinear": check_semilinear,
    "commutant": check_commutant,
    "commuting_pair": check_pair,
    "tuple": check_tuple,
    "biquiver": check_biquiver,
}


def run(seed: int = 0, trials: int = 20) -> dict:
    report = {}
    for name, check in CHECKS.items():
        failures = []
        for k in range(trials):
            rng = random.Random(f"{seed}:{k}:{name}")
            try:
                ok = check(rng)
            except Exception as exc:  # noqa: BLE001
                ok = False
                failures.append({"trial": k, "error": f"{type(exc).__name__}: {exc}"})
                continue
            if not ok:
                failures.append({"trial": k})
        report[name] = {"trials": trials, "passed": trials - len(failures), "failures": failures}
    return report

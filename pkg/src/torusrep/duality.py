"""Isotypic data extraction from graded Fock slices and the end-to-end
decomposition checks.

Everything is compared inside one ambient graded space: multiplicity =
dimension of the subspace fixed by the Levi raising operators at a fixed
weight, computed by exact nullspace.  The torus-side highest-weight
conditions are imposed through the block-triangular doubly-infinite
operators, which span the same constraints as the raising half of the
torus algebra on any bounded-degree slice once the parameters are generic
(the block values b_r q^{-k} are then distinct, so the exponential sums
separate).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidParams, PartitionMismatch
from .fock import (
    FockVector,
    Monomial,
    basis_monomials,
    gl_ell_action,
    glbar_action,
    graded_dim,
    hw_degree,
    monomial_weight,
    psi,
    psibar,
    rho_action,
)
from .glrep import (
    DominantWeight,
    EtaFunctional,
    eta_eval,
    is_dominant,
    levi_branch_D,
    levi_dim,
    tensor_mult_C,
)
from .liealg import GlqElement, h_gen_q
from .linalg import nullspace
from .reports import DecompositionReport, weight_key
from .scalars import ParameterSet, SetPartition, qpow, validate_spectrum


@dataclass(frozen=True)
class FixedSpaceQuery:
    partition: SetPartition
    weight: Tuple[int, ...]
    degree: int
    params: ParameterSet


def weight_spaces(n: int, N: int, ell: int) -> Dict[Tuple[int, ...], List[Monomial]]:
    """Degree-n monomials grouped by flavor weight."""
    out: Dict[Tuple[int, ...], List[Monomial]] = {}
    for m in basis_monomials(n, N, ell):
        out.setdefault(monomial_weight(m, ell), []).append(m)
    return out


def raising_pairs(partition: SetPartition) -> List[Tuple[int, int]]:
    """Consecutive index pairs within each block; they generate the
    unipotent radical."""
    out = []
    for b in partition.blocks:
        out.extend((b[t], b[t + 1]) for t in range(len(b) - 1))
    return out


def _vector_rows(images: Sequence[FockVector]) -> List[List[Fraction]]:
    """Rows of the stacked coefficient matrix (one row per target monomial
    appearing in any image; columns follow the image list)."""
    monos = sorted({m for v in images for m in v.support()})
    index = {m: r for r, m in enumerate(monos)}
    rows = [[Fraction(0)] * len(images) for _ in monos]
    for c, v in enumerate(images):
        for m, coeff in v.items():
            rows[index[m]][c] = coeff
    return rows


def fixed_space(query: FixedSpaceQuery) -> List[FockVector]:
    """Exact basis of the raising-fixed subspace of one weight slice."""
    N, ell = query.params.N, query.params.ell
    monos = weight_spaces(query.degree, N, ell).get(tuple(query.weight), [])
    if not monos:
        return []
    ops = raising_pairs(query.partition)
    if not ops:
        return [FockVector.monomial(m) for m in monos]
    rows: List[List[Fraction]] = []
    for (r, s) in ops:
        images = [gl_ell_action(r, s, FockVector.monomial(m), N) for m in monos]
        rows.extend(_vector_rows(images))
    kernel = nullspace(rows, len(monos))
    out = []
    for vec in kernel:
        terms = {m: c for m, c in zip(monos, vec) if c != 0}
        out.append(FockVector(terms))
    return out


def fixed_dim(partition: SetPartition, weight: Sequence[int], degree: int,
              params: ParameterSet) -> int:
    return len(fixed_space(FixedSpaceQuery(partition, tuple(weight), degree, params)))


def _block_upper_ops(partition: SetPartition, degree: int, N: int
                     ) -> List[Tuple[Tuple[int, ...], int, int]]:
    """The strictly-upper doubly-infinite units that can act on a degree
    slice, per flavor block: (flavors, row, col) with row < col bounded by
    the mode window of the slice."""
    ops = []
    n0 = degree
    for block in partition.blocks:
        for u in range(-n0, n0 + 1):
            for v in range(u, n0 + 1):
                for i in range(1, N + 1):
                    for j in range(1, N + 1):
                        A, B = u * N + i, v * N + j
                        if A < B:
                            ops.append((block, A, B))
    return ops


def joint_hw_dim(mu: Sequence[int], params: ParameterSet,
                 partition: Optional[SetPartition] = None,
                 h_window: int = 3) -> int:
    """Dimension of the joint highest-weight space of weight (eta, mu) at
    the ambient degree of the canonical product vector."""
    if partition is None:
        partition = params.spectrum_partition()
    N = params.N
    n0 = hw_degree(mu, params)
    base = fixed_space(FixedSpaceQuery(partition, tuple(mu), n0, params))
    if not base:
        return 0
    rows: List[List[Fraction]] = []
    for (flavors, A, B) in _block_upper_ops(partition, n0, N):
        images = [glbar_action(A, B, v, N, params.ell, flavors=flavors)
                  for v in base]
        rows.extend(_vector_rows(images))
    eta = EtaFunctional(tuple(mu), params.a, N, params.q)
    for i in range(1, N + 1):
        for n in range(-h_window, h_window + 1):
            h = h_gen_q(i, n, N, params.q)
            val = eta_eval(eta, i, n)
            images = [rho_action(h, params, v) - v.scale(val) for v in base]
            rows.extend(_vector_rows(images))
    return len(nullspace(rows, len(base)))


def verify_skew_duality(N: int, ell: int, a: Sequence, q, n_max: int,
                        check_hw: bool = True) -> DecompositionReport:
    """Per degree: sum over dominant weights of (fixed dim) x (Levi dim)
    must exhaust the slice dimension, and each detected weight must carry a
    one-dimensional joint highest-weight space."""
    if len(a) != ell:
        raise InvalidParams(f"need {ell} parameters, got {len(a)}")
    params = ParameterSet.of(q, a, N)
    partition = validate_spectrum(a, q)
    report = DecompositionReport(config={
        "suite": "skew-duality", "N": N, "ell": ell,
        "q": str(params.q), "a": [str(x) for x in params.a],
        "partition": partition.describe(), "n_max": n_max,
    })
    seen: set = set()
    for n in range(n_max + 1):
        table = {}
        lhs = 0
        for w in sorted(weight_spaces(n, N, ell)):
            if not is_dominant(w, partition):
                continue
            m = fixed_dim(partition, w, n, params)
            if m == 0:
                continue
            d = levi_dim(w, partition)
            table[weight_key(w)] = [m, d]
            lhs += m * d
            if check_hw and w not in seen:
                seen.add(w)
                jd = joint_hw_dim(w, params, partition)
                if jd != 1:
                    report.fail({"degree": n, "weight": weight_key(w),
                                 "joint_hw_dim": jd, "expected": 1})
        rhs = graded_dim(n, N, ell)
        report.add_case(n, table, lhs, rhs)
        if lhs != rhs:
            report.fail({"degree": n, "lhs": lhs, "rhs": rhs})
    return report


def verify_tensor_branching(N: int, ell: int, ellp: int, a: Sequence,
                            b: Sequence, q, n_max: int) -> DecompositionReport:
    """Isotypic comparison of the product-side and merged-side fixed spaces
    through the Levi restriction constants."""
    if len(a) != ell or len(b) != ellp:
        raise InvalidParams("parameter tuples must match the stated lengths")
    ab = list(a) + list(b)
    params = ParameterSet.of(q, ab, N)
    merged = validate_spectrum(ab, q)
    part_a = validate_spectrum(a, q)
    part_b = validate_spectrum(b, q)
    prod_part = part_a.union(part_b)
    report = DecompositionReport(config={
        "suite": "tensor-branching", "N": N, "ell": ell, "ellp": ellp,
        "q": str(params.q), "a": [str(x) for x in params.a[:ell]],
        "b": [str(x) for x in params.a[ell:]],
        "merged_partition": merged.describe(), "n_max": n_max,
    })
    mult_free_required = (ellp == 1)
    for n in range(n_max + 1):
        spaces = weight_spaces(n, N, ell + ellp)
        # merged-side data
        fdim: Dict[Tuple[int, ...], int] = {}
        dmaps: Dict[Tuple[int, ...], Dict] = {}
        for w in sorted(spaces):
            if not is_dominant(w, merged):
                continue
            m = fixed_dim(merged, w, n, params)
            if m:
                fdim[w] = m
                dmaps[w] = levi_branch_D(DominantWeight.of(w, merged),
                                         part_a, part_b)
        # product-side comparison per pair weight
        pair_weights = {w for w in spaces if is_dominant(w, prod_part)}
        for dmap in dmaps.values():
            pair_weights.update(mu + nu for (mu, nu) in dmap)
        table = {}
        for w in sorted(pair_weights):
            lhs = fixed_dim(prod_part, w, n, params)
            mu, nu = w[:ell], w[ell:]
            rhs = 0
            for xi, m in fdim.items():
                rhs += dmaps[xi].get((mu, nu), 0) * m
            if lhs or rhs:
                table[weight_key(mu) + "|" + weight_key(nu)] = [lhs, rhs]
            if lhs != rhs:
                report.fail({"degree": n, "weight": weight_key(w),
                             "lhs": lhs, "rhs": rhs})
        if mult_free_required:
            for xi, dmap in dmaps.items():
                bad = [kv for kv in dmap.items() if kv[1] > 1]
                if bad:
                    report.fail({"degree": n, "xi": weight_key(xi),
                                 "non_multiplicity_free": str(bad[0])})
        report.add_case(n, table,
                        sum(v[0] for v in table.values()),
                        sum(v[1] for v in table.values()))
    return report


def verify_levi_branching(bfN: Sequence[int], ell: int, a: Sequence, q,
                          n_max: int) -> DecompositionReport:
    """Fixed-space dimensions of the big slice against the convolution of
    the factors weighted by the diagonal tensor constants."""
    if len(a) != ell:
        raise InvalidParams(f"need {ell} parameters, got {len(a)}")
    bfN = tuple(bfN)
    N = sum(bfN)
    params = ParameterSet.of(q, a, N)
    partition = validate_spectrum(a, q)
    factor_params = [ParameterSet.of(q, a, Nr) for Nr in bfN]
    report = DecompositionReport(config={
        "suite": "levi-branching", "bfN": list(bfN), "ell": ell,
        "q": str(params.q), "a": [str(x) for x in params.a], "n_max": n_max,
    })
    # per factor and degree: {weight: fixed dim}
    fdim_r: List[List[Dict[Tuple[int, ...], int]]] = []
    for pr in factor_params:
        per_degree = []
        for n in range(n_max + 1):
            table = {}
            for w in sorted(weight_spaces(n, pr.N, ell)):
                if not is_dominant(w, partition):
                    continue
                m = fixed_dim(partition, w, n, pr)
                if m:
                    table[w] = m
            per_degree.append(table)
        fdim_r.append(per_degree)
    d = len(bfN)
    for n in range(n_max + 1):
        # convolve the factors over degree compositions
        combo_dim: Dict[Tuple[Tuple[int, ...], ...], int] = {}
        for comp in itertools.product(range(n + 1), repeat=d):
            if sum(comp) != n:
                continue
            tables = [fdim_r[r][comp[r]] for r in range(d)]
            if any(not t for t in tables):
                continue
            for mus in itertools.product(*(sorted(t) for t in tables)):
                prod = 1
                for r, mu in enumerate(mus):
                    prod *= tables[r][mu]
                combo_dim[mus] = combo_dim.get(mus, 0) + prod
        rhs_map: Dict[Tuple[int, ...], int] = {}
        for mus, dim in combo_dim.items():
            cmap = tensor_mult_C([DominantWeight.of(m, partition) for m in mus])
            for xi, c in cmap.items():
                rhs_map[xi] = rhs_map.get(xi, 0) + c * dim
        lhs_map: Dict[Tuple[int, ...], int] = {}
        for w in sorted(weight_spaces(n, N, ell)):
            if not is_dominant(w, partition):
                continue
            m = fixed_dim(partition, w, n, params)
            if m:
                lhs_map[w] = m
        table = {}
        for xi in sorted(set(lhs_map) | set(rhs_map)):
            l, r = lhs_map.get(xi, 0), rhs_map.get(xi, 0)
            table[weight_key(xi)] = [l, r]
            if l != r:
                report.fail({"degree": n, "weight": weight_key(xi),
                             "lhs": l, "rhs": r})
        report.add_case(n, table, sum(v[0] for v in table.values()),
                        sum(v[1] for v in table.values()))
    return report


# -- sublattice refolding -----------------------------------------------------

def lattice_parameters(a: Sequence, q, M0: int, M1: int) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """The refolded parameter tuple of length M0*ell and its deformation
    parameter q^{M0*M1}."""
    params = ParameterSet.of(q, a, 2)
    out = []
    for k in range(M0):
        for r in range(params.ell):
            out.append(qpow(params.a[r] * qpow(params.q, -k), M1))
    return tuple(out), qpow(params.q, M0 * M1)


def phi_gen(g, ell: int, M0: int, N: int):
    """Refold one generator of the M0*ell-flavor algebra into the ell-flavor
    algebra: flavor k*ell+p at mode n becomes flavor p at mode M0*n -+ k."""
    pp, kind, idx = g
    p = (pp - 1) % ell + 1
    k = (pp - 1) // ell
    n = idx // N + (1 if kind == 0 else 0)
    i = (n * N - idx) if kind == 0 else (idx - n * N + 1)
    if kind == 0:
        return psi(i, p, M0 * n - k, N)
    return psibar(i, p, M0 * n + k, N)


def phi_vector(vec: FockVector, ell: int, M0: int, N: int) -> FockVector:
    """The induced linear map on Fock vectors (relabel, re-sort, sign)."""
    out = FockVector.zero()
    for mono, c in vec.items():
        gens = [phi_gen(g, ell, M0, N) for g in mono]
        sign = 1
        arr = list(gens)
        for t in range(1, len(arr)):
            u = t
            while u > 0 and arr[u - 1] > arr[u]:
                arr[u - 1], arr[u] = arr[u], arr[u - 1]
                sign = -sign
                u -= 1
        assert all(arr[t] < arr[t + 1] for t in range(len(arr) - 1))
        out = out + FockVector.monomial(tuple(arr), c * sign)
    return out


def _pairing(g1, g2) -> int:
    p1, k1, i1 = g1
    p2, k2, i2 = g2
    if k1 == k2:
        return 0
    return 1 if (p1 == p2 and i1 + i2 == -1) else 0


def verify_lattice_intertwiner(N: int, ell: int, M0: int, M1: int,
                               a: Sequence, q, n_max: int = 1,
                               trials: int = 100, seed: int = 0,
                               sample_cap: int = 40) -> DecompositionReport:
    """Checks the refolding isomorphism: anticommutation transport, the
    torus-action intertwining over the index sublattice, flavor-action
    equivariance, and the dimension identity for the diagonal restriction
    constants."""
    import random as _random

    if len(a) != ell:
        raise InvalidParams(f"need {ell} parameters, got {len(a)}")
    params = ParameterSet.of(q, a, N)
    part = validate_spectrum(a, q)
    aa, qq = lattice_parameters(a, q, M0, M1)
    big_part = validate_spectrum(aa, qq)   # NotGeneric propagates
    if big_part != part.power(M0):
        raise PartitionMismatch(
            f"refolded partition {big_part.describe()} != {part.power(M0).describe()}")
    big_params = ParameterSet.of(qq, aa, N)
    rng = _random.Random(seed)
    report = DecompositionReport(config={
        "suite": "lattice-intertwiner", "N": N, "ell": ell, "M0": M0,
        "M1": M1, "q": str(params.q), "a": [str(x) for x in params.a],
        "refolded_a": [str(x) for x in aa], "refolded_q": str(qq),
        "n_max": n_max, "trials": trials, "seed": seed,
    })

    # (i) anticommutation values transported exactly
    ok = 0
    L = M0 * ell
    for _ in range(trials):
        kind1, kind2 = rng.randrange(2), rng.randrange(2)
        g1 = (rng.randrange(1, L + 1), kind1, rng.randrange(-2 * N, 2 * N))
        g2 = (rng.randrange(1, L + 1), kind2, rng.randrange(-2 * N, 2 * N))
        lhs = _pairing(g1, g2)
        rhs = _pairing(phi_gen(g1, ell, M0, N), phi_gen(g2, ell, M0, N))
        if lhs == rhs:
            ok += 1
        else:
            report.fail({"check": "clifford", "g1": str(g1), "g2": str(g2),
                         "lhs": lhs, "rhs": rhs})
    report.add_case("clifford", {"pairs": [ok, trials]}, ok, trials)

    # sample vectors with bounded support
    monos = []
    for n in range(n_max + 1):
        monos.extend(basis_monomials(n, N, L))
    if len(monos) > sample_cap:
        monos = rng.sample(monos, sample_cap)
    vecs = [FockVector.monomial(m) for m in sorted(monos)]

    # (ii) intertwining over the sublattice
    ok = runs = 0
    for _ in range(trials // 10 + 5):
        i, j = rng.randrange(1, N + 1), rng.randrange(1, N + 1)
        m0, m1 = rng.randrange(-2, 3), rng.randrange(-2, 3)
        x_big = GlqElement.matrix_unit(i, j, M0 * m0, M1 * m1)
        x_small = GlqElement.matrix_unit(i, j, m0, m1)
        for w in vecs:
            runs += 1
            lhs = rho_action(x_big, params, phi_vector(w, ell, M0, N))
            rhs = phi_vector(rho_action(x_small, big_params, w), ell, M0, N)
            if lhs == rhs:
                ok += 1
            else:
                report.fail({"check": "intertwine", "x": f"E[{i},{j}]t0^{M0*m0}t1^{M1*m1}",
                             "monomial": str(w.support()[:1])})
    report.add_case("intertwine", {"cases": [ok, runs]}, ok, runs)

    # (iii) flavor-block equivariance
    ok = runs = 0
    for block in part.blocks:
        for p in block:
            for pp in block:
                for w in vecs[:sample_cap // 2]:
                    runs += 1
                    big = FockVector.zero()
                    for k in range(M0):
                        big = big + gl_ell_action(k * ell + p, k * ell + pp, w, N)
                    lhs = phi_vector(big, ell, M0, N)
                    rhs = gl_ell_action(p, pp, phi_vector(w, ell, M0, N), N)
                    if lhs == rhs:
                        ok += 1
                    else:
                        report.fail({"check": "gl-equivariance", "p": p, "pp": pp})
    report.add_case("gl-equivariance", {"cases": [ok, runs]}, ok, runs)

    # (iv) restriction constants: dimension bookkeeping
    big_blocks_part = part.power(M0)
    ok = runs = 0
    for _ in range(8):
        xi = []
        for b in big_blocks_part.blocks:
            vals = sorted((rng.randrange(-2, 3) for _ in b), reverse=True)
            xi.extend((i, v) for i, v in zip(b, vals))
        xi_t = tuple(v for _, v in sorted(xi))
        slices = [DominantWeight.of(
            tuple(xi_t[k * ell + r - 1] for r in range(1, ell + 1)), part)
            for k in range(M0)]
        emap = tensor_mult_C(slices)
        lhs = sum(c * levi_dim(mu, part) for mu, c in emap.items())
        rhs = levi_dim(xi_t, big_blocks_part)
        runs += 1
        if lhs == rhs:
            ok += 1
        else:
            report.fail({"check": "restriction-constants", "xi": weight_key(xi_t),
                         "lhs": lhs, "rhs": rhs})
    report.add_case("restriction-constants", {"cases": [ok, runs]}, ok, runs)
    return report

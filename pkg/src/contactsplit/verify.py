"""Verification suites: exhaustive and seeded-random checks of the algebraic identities.

Each suite yields :class:`Record` rows, one per (n, k) cell (or per
(n, k, m) where a twist is involved), carrying the number of checks run
and the first failure if any.  All randomness comes from an explicit seed.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from .contact import ContactSpace, exactness_dims, gamma_rank
from .darboux import (
    DarbouxModel,
    certify,
    format_poly_multivector,
    parse_poly_multivector,
    splitting_section,
)
from .exalg import Multivector, basis_elements, basis_indices
from .linalg import is_nonsingular, matrix_of, nullspace, solve
from .poly import Poly
from .symplectic import (
    SymplecticModel,
    flat_k,
    is_primitive,
    lambda_L_constant,
    op_L,
    op_L_power,
    op_Lambda,
    op_Lambda_power,
    primitive_decompose,
    sharp_k,
)
from .transforms import (
    CoefficientFamily,
    apply_T,
    coefficients,
    eigen_sum,
    eigenvalues,
    is_invertible,
    twisted_closed_form,
    well_defined,
)
from . import vanishing

DEFAULT_SEED = 20240611
N_MAX_LIMIT = 4


@dataclass
class Record:
    suite: str
    n: int
    k: Optional[int] = None
    m: Optional[int] = None
    i: Optional[int] = None
    status: str = "pass"
    detail: str = ""
    checks: int = 0

    def as_dict(self) -> dict:
        return asdict(self)

    def __str__(self) -> str:
        where = " ".join(f"{name}={v}" for name, v in
                         (("n", self.n), ("k", self.k), ("m", self.m), ("i", self.i))
                         if v is not None)
        return f"{self.status.upper():4} {self.suite:13} {where:22} checks={self.checks} {self.detail}".rstrip()


@dataclass
class Cell:
    """Accumulates checks for one record; the first failure is kept as detail."""
    record: Record
    failures: List[str] = field(default_factory=list)

    def check(self, cond: bool, what: Callable[[], str] | str) -> None:
        self.record.checks += 1
        if not cond:
            self.failures.append(what() if callable(what) else what)

    def close(self, detail: str = "") -> Record:
        if self.failures:
            self.record.status = "fail"
            self.record.detail = f"{len(self.failures)} failures; first: {self.failures[0]}"
        else:
            self.record.detail = detail
        return self.record


def random_fraction(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def random_multivector(rng: random.Random, dim: int, degree: int,
                       density: float = 0.6, dual: bool = False) -> Multivector:
    terms = {key: random_fraction(rng) for key in basis_indices(dim, degree)
             if rng.random() < density}
    return Multivector(dim, degree, terms, dual)


def random_poly(rng: random.Random, nvars: int, max_degree: int = 2) -> Poly:
    out = Poly()
    for _ in range(rng.randint(0, 3)):
        term = Poly.const(random_fraction(rng))
        for _ in range(rng.randint(0, max_degree)):
            term = term * Poly.var(rng.randrange(nvars))
        out = out + term
    return out


def random_poly_multivector(rng: random.Random, dim: int, degree: int, nvars: int,
                            max_degree: int = 2) -> Multivector:
    terms = {key: random_poly(rng, nvars, max_degree) for key in basis_indices(dim, degree)
             if rng.random() < 0.7}
    return Multivector(dim, degree, terms)


# -- suites -------------------------------------------------------------------


def suite_commutator(n_max: int, seed: int = DEFAULT_SEED) -> Iterator[Record]:
    """(Lambda L - L Lambda) X = (n - k) X on every basis k-vector."""
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(0, 2 * n + 1):
            cell = Cell(Record("commutator", n, k))
            for e in basis_elements(2 * n, k):
                lhs = op_Lambda(model, op_L(model, e))
                if k >= 2:
                    lhs = lhs - op_L(model, op_Lambda(model, e))
                cell.check(lhs == e.scale(n - k), lambda: f"X={e}")
            yield cell.close()


def _random_primitive(rng: random.Random, model: SymplecticModel, k: int) -> Multivector:
    x = random_multivector(rng, model.dim, k)
    parts = primitive_decompose(model, x).as_dict()
    return parts.get(0, Multivector.zero(model.dim, k))


def suite_iterated(n_max: int, seed: int = DEFAULT_SEED, cases: int = 100) -> Iterator[Record]:
    """Iterated commutator for general r, and Lambda^s L^r on primitives (including r < s)."""
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(0, 2 * n + 1):
            cell = Cell(Record("iterated", n, k))
            zero_cases = 0
            for case in range(cases):
                r = rng.randint(1, n + 1)
                x = random_multivector(rng, model.dim, k)
                lhs = op_Lambda_power(model, op_L_power(model, x, r), 1)
                if k >= 2:
                    lhs = lhs - op_L_power(model, op_Lambda(model, x), r)
                rhs = op_L_power(model, x, r - 1).scale(r * (n - k - r + 1))
                cell.check(lhs == rhs, lambda: f"commutator r={r} X={x}")

                p = _random_primitive(rng, model, k)
                # every few cases force r < s so the vanishing branch is exercised
                if case % 4 == 0:
                    r2 = rng.randint(0, n)
                    s = r2 + rng.randint(1, 2)
                else:
                    s = rng.randint(0, n + 1)
                    r2 = s + rng.randint(0, 2)
                lhs2 = op_Lambda_power(model, op_L_power(model, p, r2), s)
                if r2 < s:
                    zero_cases += 1
                    cell.check(lhs2.is_zero(), lambda: f"r<s r={r2} s={s} X={p}")
                else:
                    c = lambda_L_constant(n, k, r2, s)
                    target = op_L_power(model, p, r2 - s).scale(c)
                    cell.check(lhs2 == target, lambda: f"r={r2} s={s} X={p}")
            yield cell.close(f"r<s cases={zero_cases}")


def _decomposition_oracle(model: SymplecticModel, k: int):
    """Dense system sum_r L^r X_r = X, Lambda X_r = 0 over the stacked unknowns."""
    rs = list(model.component_range(k))
    blocks = [(r, len(basis_indices(model.dim, k - 2 * r))) for r in rs]
    out_rows = len(basis_indices(model.dim, k))
    total = sum(size for _, size in blocks)
    rows: List[List[Fraction]] = [[Fraction(0)] * total for _ in range(out_rows)]
    offset = 0
    for r, size in blocks:
        lm = matrix_of(lambda e, r=r: op_L_power(model, e, r), model.dim, k - 2 * r,
                       model.dim, k)
        for a in range(out_rows):
            for b in range(size):
                rows[a][offset + b] = lm[a][b]
        if k - 2 * r >= 2:
            pm = matrix_of(lambda e: op_Lambda(model, e), model.dim, k - 2 * r,
                           model.dim, k - 2 * r - 2)
            for prow in pm:
                row = [Fraction(0)] * total
                row[offset:offset + size] = prow
                rows.append(row)
        offset += size
    return rows, blocks, out_rows


def suite_decompose(n_max: int, seed: int = DEFAULT_SEED) -> Iterator[Record]:
    """Reconstruction, primitivity and agreement with a dense linear solve on every basis element."""
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(0, 2 * n + 1):
            cell = Cell(Record("decompose", n, k))
            rows, blocks, out_rows = _decomposition_oracle(model, k)
            total = sum(size for _, size in blocks)
            cell.check(not nullspace(rows, total), "dense system is not uniquely solvable")
            for e in basis_elements(2 * n, k):
                comp = primitive_decompose(model, e)
                cell.check(comp.reconstruct(model) == e, lambda: f"reconstruct X={e}")
                for r, xr in comp.parts:
                    cell.check(is_primitive(model, xr), lambda: f"X_{r} not primitive, X={e}")
                    cell.check(r in model.component_range(k), lambda: f"r={r} out of range")
                rhs = [Fraction(1) if key == next(iter(e.terms)) else Fraction(0)
                       for key in basis_indices(model.dim, k)]
                rhs += [Fraction(0)] * (len(rows) - out_rows)
                sol = solve(rows, rhs)
                got = comp.as_dict()
                offset = 0
                for r, size in blocks:
                    keys = basis_indices(model.dim, k - 2 * r)
                    oracle = Multivector(model.dim, k - 2 * r,
                                         dict(zip(keys, sol[offset:offset + size])))
                    mine = got.get(r, Multivector.zero(model.dim, k - 2 * r))
                    cell.check(oracle == mine, lambda: f"oracle mismatch r={r} X={e}")
                    offset += size
            yield cell.close()


def zero_eigenvalue_family(rng: random.Random, n: int, k: int) -> tuple[CoefficientFamily, int]:
    """A custom family whose eigenvalue on some existing component is forced to zero."""
    model = SymplecticModel(n)
    rng_r = list(model.component_range(k))
    r = rng.choice(rng_r)
    top = k // 2
    cs = [random_fraction(rng) for _ in range(top + 1)]
    partial = eigen_sum(cs[:r] + [Fraction(0)], n, k, r)
    lead = eigen_sum([Fraction(0)] * r + [Fraction(1)], n, k, r)
    cs[r] = -partial / lead
    return CoefficientFamily.custom(k, cs), r


def suite_invertibility(n_max: int, seed: int = DEFAULT_SEED, random_cases: int = 50,
                        zero_cases: int = 10) -> Iterator[Record]:
    """is_invertible agrees with nonsingularity of the dense matrix of T."""
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(1, 2 * n + 1):
            cell = Cell(Record("invertibility", n, k))
            fams = []
            for _ in range(random_cases):
                cs = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(k // 2 + 1)]
                fams.append((CoefficientFamily.custom(k, cs), False))
            for _ in range(zero_cases):
                fams.append((zero_eigenvalue_family(rng, n, k)[0], True))
            singular = 0
            for fam, constructed in fams:
                dense = is_nonsingular(matrix_of(lambda e: apply_T(fam, model, e), model.dim, k))
                claim = is_invertible(fam, model)
                singular += not dense
                cell.check(claim == dense, lambda: f"{fam}: is_invertible={claim} dense={dense}")
                if constructed:
                    cell.check(not claim, lambda: f"constructed zero eigenvalue missed: {fam}")
            yield cell.close(f"singular={singular}")


def _twist_range(n: int, k: int) -> range:
    return range(-n - k - 6, n + 7)


def suite_closedform(n_max: int, seed: int = DEFAULT_SEED) -> Iterator[Record]:
    """Eigenvalue sums against the closed-form quotients, twisted and half-twisted."""
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(2, 2 * n + 1):
            cell = Cell(Record("closedform", n, k))
            for m in _twist_range(n, k):
                for fam in (CoefficientFamily.twisted(k, m), CoefficientFamily.half_twisted(k, m)):
                    if not well_defined(fam):
                        continue
                    eig = eigenvalues(fam, model)
                    for r in range(1, k // 2 + 1):
                        if r not in eig:
                            # component absent; compare the raw sum
                            val = eigen_sum(coefficients(fam), n, k, r)
                        else:
                            val = eig[r]
                        cf = twisted_closed_form(fam.twist, n, k, r)
                        cell.check(val == cf, lambda: f"{fam} r={r}: sum={val} closed={cf}")
            yield cell.close()


def suite_positivity(n_max: int, seed: int = DEFAULT_SEED) -> Iterator[Record]:
    """Default-family eigenvalues are strictly positive."""
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(0, 2 * n + 1):
            cell = Cell(Record("positivity", n, k))
            for r, v in eigenvalues(CoefficientFamily.default(k), model).items():
                cell.check(v > 0, lambda: f"r={r} eigenvalue {v}")
            yield cell.close()


def suite_sufficiency(n_max: int, seed: int = DEFAULT_SEED,
                      m_pad: int = 12) -> Iterator[Record]:
    """Every twist covered by the splitting tables gives an invertible transformation."""
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(1, 2 * n + 1):
            cell = Cell(Record("sufficiency", n, k))
            covered = 0
            for m in range(-2 * n - 2 * k - m_pad, 2 * n + m_pad + 1):
                if vanishing.splitting_ok(n, k, m):
                    covered += 1
                    fam = CoefficientFamily.twisted(k, m)
                    cell.check(well_defined(fam) and is_invertible(fam, model),
                               lambda: f"twisted m={m}")
                if m % 2 and vanishing.splitting_ok_cp(n, k, m):
                    covered += 1
                    fam = CoefficientFamily.half_twisted(k, m)
                    cell.check(well_defined(fam) and is_invertible(fam, model),
                               lambda: f"half-twisted m={m}")
            yield cell.close(f"covered={covered}")


def suite_flat(n_max: int, seed: int = DEFAULT_SEED) -> Iterator[Record]:
    """sharp o flat = id on monomials and flat(w0) = omega."""
    for n in range(1, n_max + 1):
        model = SymplecticModel(n)
        for k in range(0, 2 * n + 1):
            cell = Cell(Record("flat", n, k))
            for e in basis_elements(2 * n, k):
                cell.check(sharp_k(model, flat_k(model, e)) == e, lambda: f"X={e}")
            if k == 2:
                cell.check(flat_k(model, model.w0) == model.omega, "flat(w0) != omega")
            yield cell.close()


def suite_exactness(n_max: int, seed: int = DEFAULT_SEED) -> Iterator[Record]:
    """Rank of gamma contraction on k-vectors equals C(2n, k-1); kernel C(2n, k)."""
    for n in range(1, n_max + 1):
        space = ContactSpace(n)
        for k in range(0, space.dim + 1):
            cell = Cell(Record("exactness", n, k))
            kernel, total, image = exactness_dims(space, k)
            rk = gamma_rank(space, k)
            cell.check(rk == image, lambda: f"rank {rk} != {image}")
            cell.check(total - rk == kernel, lambda: f"kernel {total - rk} != {kernel}")
            yield cell.close(f"kernel={kernel} image={image}")


HAND_CASES = (("1", "(1)*d0"), ("z1", "(1/2)*z1*d0 + (1/2)*d2"))


def suite_darboux(n_max: int, seed: int = DEFAULT_SEED, cases: int = 25) -> Iterator[Record]:
    """Constructive splitting in the Darboux model: certification and lift independence."""
    rng = random.Random(seed)
    cell = Cell(Record("darboux", 1, 1))
    model1 = DarbouxModel(1)
    for s_text, expected in HAND_CASES:
        s = parse_poly_multivector(s_text, model1, frame=True, degree=0)
        got = format_poly_multivector(splitting_section(model1, 1, s))
        cell.check(got == expected, lambda: f"s={s_text}: {got} != {expected}")
    yield cell.close("hand-worked cases")
    for n in range(1, min(n_max, 2) + 1):
        model = DarbouxModel(n)
        for k in range(1, min(3, 2 * n + 1) + 1):
            cell = Cell(Record("darboux", n, k))
            for _ in range(cases):
                s = random_poly_multivector(rng, model.frame_dim, k - 1, model.dim)
                x = splitting_section(model, k, s)
                cert = certify(model, k, s, x)
                cell.check(cert.gamma_residual.is_zero(), lambda: f"gamma residual, s={s}")
                cell.check(cert.splitting_residual.is_zero(), lambda: f"splitting residual, s={s}")
                pert = random_poly_multivector(rng, model.frame_dim, k, model.dim)
                x2 = splitting_section(model, k, s, perturbation=pert)
                cell.check(x2 == x, lambda: f"lift dependence, s={s}")
            yield cell.close()


def suite_duality(n_max: int, seed: int = DEFAULT_SEED,
                  m_range: Sequence[int] = range(-40, 21)) -> Iterator[Record]:
    """CP tables closed under Serre duality; even CP splitting matches the general table at m/2."""
    for n in range(1, n_max + 1):
        cell = Cell(Record("duality", n))
        for k in range(1, 2 * n + 2):
            for m in m_range:
                for i in range(0, 2 * n + 2):
                    if vanishing.vanishes_cp(n, k, m, i).vanishes:
                        i2, m2 = vanishing.serre_dual_cp(n, k, m, i)
                        cell.check(vanishing.vanishes_cp(n, k, m2, i2).vanishes,
                                   lambda: f"k={k} m={m} i={i} -> ({i2}, {m2}) not covered")
                    i3, m3 = vanishing.serre_dual_cp(n, k, *reversed(vanishing.serre_dual_cp(n, k, m, i)))
                    cell.check((i3, m3) == (i, m), lambda: f"not an involution at k={k} m={m} i={i}")
                if m % 2 == 0:
                    a = bool(vanishing.splitting_ok_cp(n, k, m))
                    b = bool(vanishing.splitting_ok(n, k, m // 2))
                    cell.check(a == b, lambda: f"even split k={k} m={m}: cp={a} general={b}")
            for m in range(-3 * n - 3, n + 2):
                for i in range(0, 2 * n + 2):
                    row = vanishing.KAHLER_POS_RULES[1]
                    i2, m2 = vanishing.serre_dual_kahler(n, k, m, i)
                    cell.check(row(n, k, m, i) == row(n, k, m2, i2),
                               lambda: f"kahler row 2 not self-dual at k={k} m={m} i={i}")
        yield cell.close()


SUITES: Dict[str, Callable[..., Iterator[Record]]] = {
    "commutator": suite_commutator,
    "iterated": suite_iterated,
    "decompose": suite_decompose,
    "invertibility": suite_invertibility,
    "closedform": suite_closedform,
    "positivity": suite_positivity,
    "sufficiency": suite_sufficiency,
    "flat": suite_flat,
    "exactness": suite_exactness,
    "darboux": suite_darboux,
    "duality": suite_duality,
}


@dataclass
class Report:
    records: List[Record]

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    @property
    def checks(self) -> int:
        return sum(r.checks for r in self.records)


def run_suites(n_max: int, suites: Sequence[str] | None = None,
               seed: int = DEFAULT_SEED) -> Iterator[Record]:
    if not 1 <= n_max <= N_MAX_LIMIT:
        raise ValueError(f"n_max must lie in 1..{N_MAX_LIMIT}, got {n_max}")
    names = list(SUITES) if not suites else list(suites)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    for name in names:
        yield from SUITES[name](n_max, seed)


def run_verify(n_max: int, suites: Sequence[str] | None = None,
               seed: int = DEFAULT_SEED) -> Report:
    return Report(list(run_suites(n_max, suites, seed)))

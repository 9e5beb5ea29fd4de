"""Linear complexity: Berlekamp-Massey, the gcd formula, root counting, the closed-form prediction,
and a verifier for the evaluation identities of the E/H/T class polynomials.
"""

import io
import logging
from functools import lru_cache
from typing import Callable, Iterable, Literal, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, computed_field

from ..config import settings
from ..errors import FieldContextError, HypothesisViolation, ParameterError, SizeError
from .cyclotomy import CyclotomicParams, cyclotomic_class
from .gf2_field import FieldCtx, FieldElement, Gf2Poly, build_field_ctx, eval_poly, field_pow, poly_gcd
from .number_theory import delta_half_period, discrete_log, half_power_parity, is_wieferich
from .sequence_gen import BinarySequence, generate, generating_polynomial

logger = logging.getLogger(__name__)

NOT_APPLICABLE = "NOT_APPLICABLE"
SKIPPED = "SKIPPED"

BRANCH_IN_D0 = "2 in D0"
BRANCH_NOT_IN_D0 = "2 not in D0"

METHODS = ("bm", "gcd", "roots")

REPORT_COLUMNS = [
    "p", "n", "e", "b", "g", "branch", "predicted", "bm", "gcd", "roots", "zero_count", "agree",
]

# Failures kept per identity family in a report
_MAX_FAILURES = 10


class LcReport(BaseModel):
    """Predicted and measured linear complexity of one parameter tuple."""

    model_config = ConfigDict(frozen=True)

    params: CyclotomicParams
    branch: str
    predicted: Union[int, Literal["NOT_APPLICABLE"]]
    measured_bm: Optional[int] = None
    measured_gcd: Optional[int] = None
    measured_roots: Union[int, Literal["SKIPPED"], None] = None
    zero_count: Optional[int] = None
    agree: bool

    def to_row(self) -> dict:
        p = self.params
        return {
            "p": p.p,
            "n": p.n,
            "e": p.e,
            "b": p.b,
            "g": p.g,
            "branch": self.branch,
            "predicted": self.predicted,
            "bm": self.measured_bm,
            "gcd": self.measured_gcd,
            "roots": self.measured_roots,
            "zero_count": self.zero_count,
            "agree": self.agree,
        }


class FamilyResult(BaseModel):
    """Outcome of one identity family."""

    name: str
    checked: int = 0
    failed: int = 0
    exhaustive: bool = True
    skipped: bool = False
    informational: bool = False
    failures: list[dict[str, int]] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.skipped or self.informational or self.failed == 0


class IdentityReport(BaseModel):
    params: CyclotomicParams
    sample_budget: int
    families: list[FamilyResult]

    @computed_field
    @property
    def all_passed(self) -> bool:
        return all(family.passed for family in self.families)

    def family(self, name: str) -> FamilyResult:
        for result in self.families:
            if result.name == name:
                return result
        raise KeyError(name)


# ---------------------------------------------------------------------------
# Berlekamp-Massey
# ---------------------------------------------------------------------------


def lfsr_length(value: int, length: int) -> int:
    """Shortest LFSR generating the finite bit string s_0..s_{length-1} (s_i at bit i of value).

    The products s*B and s*C are kept as shifted integers so each step is a
    handful of big-int operations instead of a discrepancy loop.
    """
    if length < 0:
        raise ParameterError("bit string cannot have negative length")
    sb, sc = value, value
    deg_c = 0
    m = 0
    for n in range(length):
        disc = sc & (1 << m)
        m += 1
        if disc:
            sc >>= m
            m = 0
            if 2 * deg_c <= n:
                sb, sc = sc, sb
                deg_c = n + 1 - deg_c
            sc ^= sb
    return deg_c


def _as_sequence(seq: Union[BinarySequence, Iterable[int]]) -> BinarySequence:
    return seq if isinstance(seq, BinarySequence) else BinarySequence.from_bits(seq)


def berlekamp_massey(seq: Union[BinarySequence, Iterable[int]]) -> int:
    """Linear complexity of the periodic sequence with the given period.

    Two periods fix every LFSR of length at most N, so synthesis over 2N bits
    yields the periodic complexity.
    """
    seq = _as_sequence(seq)
    n = seq.period
    if n == 0:
        raise ParameterError("Berlekamp-Massey needs at least one bit")
    value = seq.value
    return lfsr_length(value | (value << n), 2 * n)


# ---------------------------------------------------------------------------
# gcd formula and root counting
# ---------------------------------------------------------------------------


def lc_via_gcd(seq: Union[BinarySequence, Iterable[int]]) -> int:
    """N - deg gcd(x^N - 1, S(x))."""
    seq = _as_sequence(seq)
    if seq.period == 0:
        raise ParameterError("sequence period must be at least 1")
    s = generating_polynomial(seq)
    if not s:
        return 0
    return seq.period - poly_gcd(Gf2Poly.x_pow_plus_one(seq.period), s).degree


def _frobenius_orbits(modulus: int) -> list[tuple[int, int]]:
    """(representative, size) of each orbit of i -> 2i on Z_modulus."""
    seen = np.zeros(modulus, dtype=bool)
    orbits = []
    for i in range(modulus):
        if seen[i]:
            continue
        size = 0
        x = i
        while not seen[x]:
            seen[x] = True
            size += 1
            x = 2 * x % modulus
        orbits.append((i, size))
    return orbits


def lc_via_roots(seq: BinarySequence, ctx: FieldCtx, orbit_reduce: bool = False) -> tuple[int, int]:
    """(N - zero_count, zero_count) with zero_count = |{i : S(alpha_n^i) = 0}|.

    With orbit_reduce only one point per orbit {i 2^s} is evaluated, since
    S(y^2) = S(y)^2 shares zeros across an orbit.
    """
    n = seq.period
    if ctx.period != n:
        raise FieldContextError(f"field context is for period {ctx.period}, sequence has {n}")

    support = np.flatnonzero(seq.bits).astype(np.int64)
    points = _frobenius_orbits(n) if orbit_reduce else [(i, 1) for i in range(n)]

    zero_count = 0
    table = ctx.powers_array
    if table is not None:
        for i, size in points:
            if np.bitwise_xor.reduce(table[(i * support) % n]) == 0:
                zero_count += size
    else:
        powers = ctx.powers
        exponents = support.tolist()
        for i, size in points:
            acc = 0
            for t in exponents:
                acc ^= powers[i * t % n]
            if acc == 0:
                zero_count += size

    logger.debug(f"Root count over {len(points)} points of period {n}: {zero_count} zeros")
    return n - zero_count, zero_count


# ---------------------------------------------------------------------------
# Closed form
# ---------------------------------------------------------------------------


def two_in_d0(params: CyclotomicParams) -> bool:
    """2 lies in D_0^(p), i.e. ind_g(2) = 0 (mod d_1)."""
    return discrete_log(params.g, 2, params.p) % params.d(1) == 0


def predict_lc(params: CyclotomicParams) -> int:
    """Closed-form linear complexity for f = 2^r and non-Wieferich p; independent of b."""
    if is_wieferich(params.p):
        raise HypothesisViolation(
            f"closed form does not apply: 2^(p-1) = 1 (mod p^2) for p = {params.p}"
        )
    correction = delta_half_period(params.p, params.n)
    if two_in_d0(params):
        correction += (params.p - 1) // 2
    return params.period - correction


# ---------------------------------------------------------------------------
# Class polynomials E, H, T
# ---------------------------------------------------------------------------


def _check_context(params: CyclotomicParams, ctx: FieldCtx, x: FieldElement) -> None:
    if (ctx.p, ctx.n) != (params.p, params.n):
        raise FieldContextError(f"field context is for p = {ctx.p}, n = {ctx.n}")
    if x.ctx.modulus != ctx.modulus:
        raise FieldContextError("point belongs to a different field")


def _check_level(params: CyclotomicParams, j: int) -> None:
    if not 1 <= j <= params.n:
        raise ParameterError(f"level j = {j} outside 1..{params.n}")


def _class_sum(params: CyclotomicParams, ctx: FieldCtx, j: int, l: int, x: FieldElement) -> int:
    """sum of x^t over D_l^(p^j), as a field value."""
    elements = cyclotomic_class(params, j, l).elements
    h = ctx.exponent_of.get(x.value)
    acc = 0
    if h is not None:
        # x is a power of alpha_n: read x^t off the power table
        powers = ctx.powers
        period = ctx.period
        for t in elements:
            acc ^= powers[h * t % period]
    else:
        for t in elements:
            acc ^= field_pow(x, t).value
    return acc


def eval_E(params: CyclotomicParams, ctx: FieldCtx, j: int, l: int, x: FieldElement) -> FieldElement:
    """E_l^(p^j)(x) = sum of x^t over t in D_l^(p^j)."""
    _check_context(params, ctx, x)
    _check_level(params, j)
    return FieldElement(_class_sum(params, ctx, j, l, x), ctx)


def eval_H(params: CyclotomicParams, ctx: FieldCtx, j: int, k: int, x: FieldElement) -> FieldElement:
    """H_k^(p^j)(x) = sum of E_{(i+k) mod d_j}^(p^j)(x) for 0 <= i < d_j/2."""
    _check_context(params, ctx, x)
    _check_level(params, j)
    d_j = params.d(j)
    acc = 0
    for i in range(d_j // 2):
        acc ^= _class_sum(params, ctx, j, (i + k) % d_j, x)
    return FieldElement(acc, ctx)


def eval_T(params: CyclotomicParams, ctx: FieldCtx, j: int, k: int, x: FieldElement) -> FieldElement:
    """T_k^(p^j)(x) = H_k^(p^j)(x) + H_k^(p^(j-1))(x^p) + ... + H_k^(p)(x^(p^(j-1)))."""
    _check_context(params, ctx, x)
    _check_level(params, j)
    acc = 0
    for level in range(j, 0, -1):
        y = field_pow(x, params.p ** (j - level))
        acc ^= eval_H(params, ctx, level, k % params.d(level), y).value
    return FieldElement(acc, ctx)


# ---------------------------------------------------------------------------
# Identity verifier
# ---------------------------------------------------------------------------


def _run_family(
    name: str,
    keys: Sequence[str],
    cases: list[tuple],
    check: Callable[..., bool],
    budget: int,
    rng: np.random.Generator,
    informational: bool = False,
) -> FamilyResult:
    exhaustive = len(cases) <= budget
    if not exhaustive:
        picks = np.sort(rng.choice(len(cases), size=budget, replace=False))
        cases = [cases[i] for i in picks]

    failed = 0
    failures: list[dict[str, int]] = []
    for case in cases:
        if check(*case):
            continue
        failed += 1
        if len(failures) < _MAX_FAILURES:
            failures.append({key: int(v) for key, v in zip(keys, case)})

    result = FamilyResult(
        name=name,
        checked=len(cases),
        failed=failed,
        exhaustive=exhaustive,
        informational=informational,
        failures=failures,
    )
    level = logging.INFO if result.passed else logging.ERROR
    logger.log(level, f"Identity family {name}: {len(cases) - failed}/{len(cases)} hold")
    return result


def verify_identities(
    params: CyclotomicParams,
    ctx: FieldCtx,
    sample_budget: Optional[int] = None,
    seed: int = 0,
) -> IdentityReport:
    """Evaluate the complement, shift, Frobenius, non-binary and companion identities.

    Each family is exhaustive when its case count fits the sample budget and
    uniformly sampled (seeded) otherwise.
    """
    if (ctx.p, ctx.n) != (params.p, params.n):
        raise FieldContextError(f"field context is for p = {ctx.p}, n = {ctx.n}")
    budget = settings.sample_budget if sample_budget is None else sample_budget
    if budget < 1:
        raise ParameterError("sample budget must be at least 1")

    p, n, b = params.p, params.n, params.b
    period = params.period
    rng = np.random.default_rng(seed)

    @lru_cache(maxsize=None)
    def t_at(j: int, k: int, h: int) -> int:
        """T_k^(p^j)(alpha_n^h)."""
        return eval_T(params, ctx, j, k % params.d(j), ctx.root(h)).value

    def exponent(j: int, a: int) -> int:
        """alpha_j^a = alpha_n^(a p^(n-j))."""
        return a * p ** (n - j) % period

    def units(m: int) -> list[int]:
        return [a for a in range(1, m) if a % p]

    families: list[FamilyResult] = []

    # T_i + T_{i + d_j/2} = 1 at every primitive p^j-th root
    def complement(j: int, i: int, a: int) -> bool:
        h = exponent(j, a)
        return t_at(j, i, h) ^ t_at(j, i + params.d(j) // 2, h) == 1

    cases = [(j, i, a) for j in range(1, n + 1) for i in range(params.d(j)) for a in units(p**j)]
    families.append(_run_family("complement", ("j", "i", "a"), cases, complement, budget, rng))

    # Level drop: alpha_j^(p^l a) = alpha_{j-l}^a, and T at level j agrees with T at level j-l there
    shift_cases = [
        (j, l, i, a)
        for j in range(1, n + 1)
        for l in range(j)
        for i in range(params.d(j))
        for a in units(p ** (j - l))
    ]

    def shift(j: int, l: int, i: int, a: int) -> bool:
        h = exponent(j - l, a)
        return t_at(j, i, h) == t_at(j - l, i, h)

    def shift_as_printed(j: int, l: int, i: int, a: int) -> bool:
        h = exponent(j - l, a)
        return t_at(j, i, h) == t_at(j - l, i, h) ^ half_power_parity(p, l)

    families.append(_run_family("shift", ("j", "l", "i", "a"), shift_cases, shift, budget, rng))
    families.append(
        _run_family(
            "shift_as_printed", ("j", "l", "i", "a"), shift_cases, shift_as_printed, budget, rng, informational=True
        )
    )

    # Squaring moves the class index by u_j = ind_g(2) mod p^j
    u = {j: discrete_log(params.g, 2, p**j) for j in range(1, n + 1)}

    def frobenius(j: int, i: int, a: int) -> bool:
        h = exponent(j, a)
        squared = field_pow(FieldElement(t_at(j, i, h), ctx), 2).value
        return squared == t_at(j, i + u[j], h)

    families.append(_run_family("frobenius", ("j", "i", "a"), cases, frobenius, budget, rng))

    # T_k^(p^n)(alpha_n^h) lies outside GF(2) whenever p^(n-1) does not divide h
    if is_wieferich(p):
        families.append(FamilyResult(name="non_binary", skipped=True))
    else:
        top = p ** (n - 1)
        nb_cases = [(k, h) for k in range(params.d(n)) for h in range(period) if h % top]

        def non_binary(k: int, h: int) -> bool:
            return not FieldElement(t_at(n, k, h), ctx).in_prime_field()

        families.append(_run_family("non_binary", ("k", "h"), nb_cases, non_binary, budget, rng))

    # S(x) = T_b^(p^n)(x) + 1 at every p^n-th root of unity
    s_poly = generating_polynomial(generate(params))

    def generating(h: int) -> bool:
        return eval_poly(s_poly, ctx.root(h)).value == t_at(n, b, h) ^ 1

    families.append(_run_family("generating", ("h",), [(h,) for h in range(period)], generating, budget, rng))

    # Class sums at the point 1
    one = ctx.one

    def point_one(j: int, i: int) -> bool:
        e_value = eval_E(params, ctx, j, i, one).value
        h_value = eval_H(params, ctx, j, i, one).value
        return e_value == params.e % 2 and h_value == (p ** (j - 1) * (p - 1) // 2) % 2

    po_cases = [(j, i) for j in range(1, n + 1) for i in range(params.d(j))]
    families.append(_run_family("point_one", ("j", "i"), po_cases, point_one, budget, rng))

    # Level one: T_b^(p)(alpha_1^a) = 1 for exactly (p-1)/2 values of a when 2 is in D_0^(p),
    # and never lies in GF(2) otherwise
    in_d0 = two_in_d0(params)

    def binary_count(b1: int) -> bool:
        values = [t_at(1, b1, exponent(1, a)) for a in range(1, p)]
        if in_d0:
            return values.count(1) == (p - 1) // 2
        return not any(v in (0, 1) for v in values)

    families.append(
        _run_family("binary_count", ("b",), [(b % params.d(1),)], binary_count, budget, rng)
    )

    report = IdentityReport(params=params, sample_budget=budget, families=families)
    logger.info(f"Identity check for {params.echo()}: {'all passed' if report.all_passed else 'FAILURES'}")
    return report


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def measure(
    params: CyclotomicParams,
    methods: Sequence[str] = METHODS,
    cap_period: Optional[int] = None,
    cap_degree: Optional[int] = None,
    orbit_reduce: bool = False,
) -> LcReport:
    """Run the requested measurements on generate(params) and compare them with the prediction."""
    unknown = sorted(set(methods) - set(METHODS))
    if unknown:
        raise ParameterError(f"unknown method(s): {', '.join(unknown)}")

    seq = generate(params, cap_period)
    bm = berlekamp_massey(seq) if "bm" in methods else None
    gcd = lc_via_gcd(seq) if "gcd" in methods else None

    roots: Union[int, str, None] = None
    zero_count: Optional[int] = None
    if "roots" in methods:
        try:
            ctx = build_field_ctx(params.p, params.n, cap_degree)
        except SizeError as exc:
            logger.warning(f"Root counting skipped for {params.echo()}: {exc}")
            roots = SKIPPED
        else:
            roots, zero_count = lc_via_roots(seq, ctx, orbit_reduce)

    # x^N - 1 is squarefree for odd N, so N - L counts roots for any method
    if zero_count is None:
        known = gcd if gcd is not None else bm
        if known is not None:
            zero_count = seq.period - known

    try:
        predicted: Union[int, str] = predict_lc(params)
    except HypothesisViolation:
        predicted = NOT_APPLICABLE

    values = [v for v in (bm, gcd, roots) if isinstance(v, int)]
    if isinstance(predicted, int):
        values.append(predicted)

    report = LcReport(
        params=params,
        branch=BRANCH_IN_D0 if two_in_d0(params) else BRANCH_NOT_IN_D0,
        predicted=predicted,
        measured_bm=bm,
        measured_gcd=gcd,
        measured_roots=roots,
        zero_count=zero_count,
        agree=len(set(values)) <= 1,
    )
    if not report.agree:
        logger.error(f"Linear complexity disagreement: {report.model_dump_json()}")
    return report


def report_rows(reports: Iterable[LcReport]) -> pd.DataFrame:
    """One row per report in the documented column order."""
    return pd.DataFrame([r.to_row() for r in reports], columns=REPORT_COLUMNS, dtype=object)


def _parse_cell(column: str, cell: str):
    if cell == "":
        return None
    if column == "agree":
        return cell == "True"
    if column == "branch":
        return cell
    try:
        return int(cell)
    except ValueError:
        return cell


def parse_report_csv(text: str) -> list[dict]:
    """Parse CSV produced from report_rows back into plain row dicts."""
    frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    missing = [c for c in REPORT_COLUMNS if c not in frame.columns]
    if missing:
        raise ParameterError(f"report CSV is missing columns: {', '.join(missing)}")
    return [
        {column: _parse_cell(column, record[column]) for column in REPORT_COLUMNS}
        for record in frame.to_dict(orient="records")
    ]

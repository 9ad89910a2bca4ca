"""Built-in self-check suite behind ``fracsum verify``.

Each check recomputes a known identity or witness from scratch and reports
the measured error next to its threshold.  ``quick`` runs the cheap
algebraic and Lorentz-grid checks, and the full run adds the slower
witness, classification and duality checks.
"""

from __future__ import annotations

import time
from math import comb
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .almost import estimate_almost_limit, lorentz_grid, make_generator
from .classify import SpacePair, all_pairs, class_conditions, classify, ClassVerdict
from .duality import dual_check
from .frac_coeff import recurrence_weights, weight_direct
from .operators import build_frac_delta, build_frac_delta_inverse, cesaro, compose, identity
from .spaces import fdf_norm, iso_forward


@dataclass(frozen=True)
class CheckResult:
    key: str
    description: str
    passed: bool
    measured: str
    threshold: str


def naive_lorentz(x: np.ndarray, m_max: int) -> np.ndarray:
    """Double-loop reference for the Lorentz grid (NaN outside range)."""
    n = len(x)
    out = np.full((m_max + 1, n), np.nan)
    for m in range(m_max + 1):
        for start in range(n - m):
            out[m, start] = sum(x[start : start + m + 1]) / (m + 1)
    return out


def naive_spread(x: np.ndarray, m: int) -> float:
    """Row spread of the Lorentz means by explicit window sums."""
    c = np.concatenate(([0.0], np.cumsum(x, dtype=np.float64)))
    # independent of the longdouble prefix used by the library
    means = [(c[s + m + 1] - c[s]) / (m + 1) for s in range(len(x) - m)]
    return max(means) - min(means)


def difference_matrix(n: int) -> np.ndarray:
    return np.eye(n) - np.eye(n, k=-1)


# --- the checks -------------------------------------------------------------

INVERSE_ORDERS = (0.1, 0.5, 0.9, 1.5)
ORACLE_ORDERS = (0.25, 0.5, 1.5, -0.5, 2.0, 3.0)


def check_inverse(n: int = 128) -> CheckResult:
    worst = 0.0
    for r in INVERSE_ORDERS:
        d, di = build_frac_delta(r), build_frac_delta_inverse(r)
        for p in (compose(d, di, n), compose(di, d, n)):
            worst = max(worst, float(np.abs(p.truncation(n) - np.eye(n)).max()))
    return CheckResult("1", "inverse identity", worst < 1e-9, f"{worst:.2e}", "< 1e-09")


def check_semigroup(n: int = 128) -> CheckResult:
    e1 = np.abs(compose(build_frac_delta(0.3), build_frac_delta(0.7), n).truncation(n)
                - difference_matrix(n)).max()
    e2 = np.abs(compose(build_frac_delta(0.25), build_frac_delta(0.25), n).truncation(n)
                - build_frac_delta(0.5).truncation(n)).max()
    worst = float(max(e1, e2))
    return CheckResult("2", "semigroup law", worst < 1e-9, f"{worst:.2e}", "< 1e-09")


def check_weight_oracle(count: int = 31) -> CheckResult:
    worst = 0.0
    exact = True
    for r in ORACLE_ORDERS:
        w = recurrence_weights(r, count)
        ref = np.array([weight_direct(r, i) for i in range(count)])
        nz = ref != 0
        worst = max(worst, float(np.max(np.abs(w[nz] - ref[nz]) / np.abs(ref[nz]))))
        if float(r).is_integer():
            k = int(r)
            binom = [(-1) ** i * comb(k, i) for i in range(count)]
            exact &= bool(np.array_equal(w, np.array(binom, dtype=np.float64)))
    ok = worst <= 1e-12 and exact
    return CheckResult("3", "weight oracle", ok,
                       f"{worst:.2e}, integer exact={exact}", "<= 1e-12")


def check_witness(n: int = 8192, m_max: int = 2000) -> CheckResult:
    d = make_generator("d_sequence", n, r=0.5)
    z = iso_forward(d, 0.5).values
    rec = float(np.abs(z - make_generator("zero_one", n).values).max())
    est = estimate_almost_limit(z, m_max, 1e-3)
    err = abs(est.value - 0.5)
    ok = rec <= 1e-10 and err <= 1e-3
    return CheckResult("4", "fdf witness -> 1/2", ok,
                       f"recovery {rec:.1e}, |L-1/2| {err:.1e}", "1e-10 / 1e-03")


def check_miller_orhan(n: int = 20000, lo: int = 500, hi: int = 2000,
                       ones: int = 10) -> CheckResult:
    x = make_generator("miller_orhan", n, ones=ones).values
    row = lorentz_grid(x, hi)
    spreads = np.array([np.ptp(row.row(m)) for m in range(lo, hi + 1)])
    probe = [lo, (lo + hi) // 2, hi]
    oracle = max(abs(naive_spread(x, m) - spreads[m - lo]) for m in probe)
    worst = float(spreads.min())
    ok = bool(worst >= 0.1 and oracle <= 1e-9)
    return CheckResult("5", "blocks witness not f-convergent", ok,
                       f"min spread {worst:.3f}", ">= 0.1")


def check_grid(n: int = 256, m_max: int = 100, trials: int = 10, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = rng.standard_normal(n)
        fast = lorentz_grid(x, m_max).as_array()
        slow = naive_lorentz(x, m_max)
        worst = max(worst, float(np.nanmax(np.abs(fast - slow))))
    return CheckResult("6", "Lorentz grid oracle", worst <= 1e-12, f"{worst:.2e}", "<= 1e-12")


GOLDEN_TABLES = {
    ("f", "linf"): (1, "1", ("C20",)),
    ("f", "c"): (1, "2", ("C20", "C21", "C22", "C23")),
    ("f", "cs"): (1, "3", ("C29", "C30", "C31", "C32")),
    ("f", "bs"): (1, "4", ("C29",)),
    ("f", "f"): (1, "5", ("C20", "C24", "C25", "C26")),
    ("linf", "f"): (2, "6", ("C20", "C24", "C26x")),
    ("c", "f"): (2, "7", ("C20", "C24", "C25")),
    ("bs", "f"): (2, "8", ("C33", "C27", "C24", "C26")),
    ("cs", "f"): (2, "9", ("C33", "C24")),
    ("fdf", "linf"): (3, "1a", ("C20",)),
    ("fdf", "c"): (3, "2a", ("C20", "C21", "C22", "C23")),
    ("fdf", "cs"): (3, "3a", ("C29", "C30", "C31", "C32")),
    ("fdf", "bs"): (3, "4a", ("C29",)),
    ("fdf", "f"): (3, "5a", ("C20", "C24", "C25", "C26")),
    ("linf", "fdf"): (4, "6a", ("C20", "C24", "C26x")),
    ("c", "fdf"): (4, "7a", ("C20", "C24", "C25")),
    ("bs", "fdf"): (4, "8a", ("C33", "C27", "C24", "C26")),
    ("cs", "fdf"): (4, "9a", ("C33", "C24")),
}


def check_classification() -> CheckResult:
    table_ok = sorted(all_pairs()) == sorted(GOLDEN_TABLES)
    for (src, dst), (table, entry, ids) in GOLDEN_TABLES.items():
        order = 0.5 if "fdf" in (src, dst) else None
        spec = class_conditions(SpacePair(src, dst, order))
        table_ok &= (spec.table, spec.entry, spec.conditions) == (table, entry, ids)
    ces = classify(cesaro(), SpacePair("f", "c"), 512, 1024, 1e-2).verdict
    ident = classify(identity(), SpacePair("f", "f"), 512, 1024, 1e-2).verdict
    ok = table_ok and ces is ClassVerdict.MEMBER and ident is ClassVerdict.MEMBER
    return CheckResult("7", "classification goldens", ok,
                       f"tables={table_ok}, C1 (f:c) {ces.value}, I (f:f) {ident.value}",
                       "18 entries + 2 memberships")


def dual_corpus(n: int) -> dict[str, np.ndarray]:
    """Twenty test sequences: polynomial decay, constants, alternating
    signs and logarithmic growth."""
    k = np.arange(n, dtype=np.float64)
    corpus = {f"poly{p:g}": (k + 1.0) ** -p for p in (0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0)}
    corpus.update({f"const{c:g}": np.full(n, c) for c in (1.0, -2.0, 0.5, 0.0)})
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    corpus.update({"alt": sign, "alt_poly1": sign / (k + 1.0), "alt_poly2": sign / (k + 1.0) ** 2,
                   "alt_log": sign * np.log(k + 2.0)})
    corpus.update({"log": np.log(k + 2.0), "log2": np.log(k + 2.0) ** 2,
                   "log_sqrt": np.sqrt(np.log(k + 2.0)), "loglog": np.log(np.log(k + 3.0))})
    return corpus


def check_duals(n: int = 1024, orders=(0.3, 0.7)) -> CheckResult:
    clashes = []
    definite = 0
    for r in orders:
        for name, a in dual_corpus(n).items():
            for kind in ("beta", "gamma"):
                rep = dual_check(a, r, kind)
                if rep.agreement is False:
                    clashes.append(f"{name}/{kind}/r={r}")
                elif rep.agreement:
                    definite += 1
    return CheckResult("8", "dual route agreement", not clashes,
                       f"{len(clashes)} clashes, {definite} agreeing definite", "0 clashes")


def check_norm(trials: int = 10, n: int = 256, m_max: int = 64, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    hom = tri = mono = True
    for _ in range(trials):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        nx, ny = fdf_norm(x, 0.5, m_max), fdf_norm(y, 0.5, m_max)
        for alpha in (2.0, -1.0, 0.5):
            hom &= fdf_norm(alpha * x, 0.5, m_max) == abs(alpha) * nx
        tri &= fdf_norm(x + y, 0.5, m_max) <= nx + ny + 1e-12
        sizes = [fdf_norm(x[:s], 0.5, min(m_max, s - 1)) for s in (64, 128, 192, 256)]
        mono &= all(a <= b for a, b in zip(sizes, sizes[1:]))
    return CheckResult("9", "norm properties", hom and tri and mono,
                       f"homogeneous={hom}, triangle={tri}, monotone={mono}", "all hold")


QUICK: tuple[Callable[[], CheckResult], ...] = (
    check_inverse, check_semigroup, check_weight_oracle, check_witness, check_grid)
FULL = QUICK[:4] + (check_miller_orhan, check_grid, check_classification,
                    check_duals, check_norm)


def run(quick: bool = False) -> list[CheckResult]:
    return [check() for check in (QUICK if quick else FULL)]


def format_table(results: list[CheckResult], elapsed: float | None = None) -> str:
    lines = [f"{'#':>2}  {'check':<32} {'result':<6} {'measured':<44} threshold"]
    for r in results:
        lines.append(f"{r.key:>2}  {r.description:<32} {'PASS' if r.passed else 'FAIL':<6} "
                     f"{r.measured:<44} {r.threshold}")
    passed = sum(r.passed for r in results)
    tail = f"{passed}/{len(results)} passed"
    if elapsed is not None:
        tail += f" in {elapsed:.1f} s"
    lines.append(tail)
    return "\n".join(lines)


def main(quick: bool = False) -> int:
    t0 = time.perf_counter()
    results = run(quick)
    print(format_table(results, time.perf_counter() - t0))
    return 0

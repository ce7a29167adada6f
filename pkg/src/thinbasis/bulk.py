"""Vectorized whole-range sweeps.

Desk-scale verification walks every n up to 10^6, which is far too many
scalar queries; these routines run the same definitions as numpy array
passes.  All counting stays in exact int64 arithmetic (indicator
convolutions, bincounts and dot products), never floating point, so batch
results are directly comparable with the scalar routes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import BasisContext

# Fixed seed for the random oracle samples so verification reports are
# byte-identical between runs.
SAMPLE_SEED = 271828


def _digit_arrays(ctx: BasisContext, nmax: int) -> list[np.ndarray]:
    k = ctx.digit_length(nmax)
    cur = np.arange(nmax + 1, dtype=np.int64)
    digits = []
    for i in range(k):
        b = ctx.bases[i]
        digits.append(cur % b)
        cur //= b
    return digits


def _indicator(ctx: BasisContext, i: int) -> np.ndarray:
    cache = ctx.__dict__.setdefault("_bulk_indicators", {})
    got = cache.get(i)
    if got is None:
        ind = np.zeros(ctx.bases[i], dtype=bool)
        ind[list(ctx.level(i).residues())] = True
        got = cache[i] = ind
    return got


def _conv_tables(ctx: BasisContext, i: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(member*member, member*any, membership indicator) for level i.

    The first two are indexed by the digit-pair sum s in [0, 2b-2].
    """
    cache = ctx.__dict__.setdefault("_bulk_conv", {})
    got = cache.get(i)
    if got is None:
        b = ctx.bases[i]
        ind = _indicator(ctx, i).astype(np.int64)
        ones = np.ones(b, dtype=np.int64)
        got = cache[i] = (np.convolve(ind, ind), np.convolve(ind, ones), ind.astype(bool))
    return got


def membership_bitmap(ctx: BasisContext, nmax: int) -> np.ndarray:
    """Boolean membership of every n in [0, nmax]."""
    ctx.ensure_capacity_for(nmax)
    digits = _digit_arrays(ctx, nmax)
    k = len(digits)
    ok = np.ones(nmax + 1, dtype=bool)
    above = np.zeros(nmax + 1, dtype=bool)
    # digit i is constrained exactly where some higher position is nonzero
    for i in range(k - 2, -1, -1):
        above = above | (digits[i + 1] > 0)
        ok &= _indicator(ctx, i)[digits[i]] | ~above
    return ok


def enumerate_upto(ctx: BasisContext, nmax: int) -> list[int]:
    return [int(v) for v in np.flatnonzero(membership_bitmap(ctx, nmax))]


def sigma_exact_range(ctx: BasisContext, nmax: int) -> np.ndarray:
    """sigma_exact for every n in [0, nmax] by the batched digit DP.

    Same automaton as the scalar version: state (carry, status, status'),
    pair counts looked up in the level convolution tables.
    """
    ctx.ensure_capacity_for(nmax)
    size = nmax + 1
    digits = _digit_arrays(ctx, nmax)
    k = len(digits)
    states: dict[tuple[int, int, int], np.ndarray] = {
        (0, 0, 0): np.ones(size, dtype=np.int64)
    }
    for i in range(k):
        b = ctx.bases[i]
        nj = digits[i]
        last = i == k - 1
        if not last:
            t_mm, t_ma, ind = _conv_tables(ctx, i)
        new: dict[tuple[int, int, int], np.ndarray] = {}

        def add(key: tuple[int, int, int], arr: np.ndarray) -> None:
            if key in new:
                new[key] += arr
            else:
                new[key] = arr

        for (c, sa, sb), cnt in states.items():
            for cout in (0, 1):
                s = nj - c + (b if cout else 0)
                valid = (s >= 0) & (s <= 2 * b - 2)
                if last:
                    if cout:
                        continue
                    if sa == 0 and sb == 0:
                        ways = np.where(s < b, s + 1, 2 * b - 1 - s)
                        add((0, 0, 0), cnt * np.where(valid, ways, 0))
                    elif sa == 0 or sb == 0:
                        add((0, sa, sb), cnt * (valid & (s < b)))
                    else:
                        add((0, 1, 1), cnt * (valid & (s == 0)))
                    continue
                s_safe = np.where(valid, s, 0)
                vcnt = cnt * valid
                if sa == 0 and sb == 0:
                    mm = t_mm[s_safe]
                    ma = t_ma[s_safe]
                    aa = np.where(s_safe < b, s_safe + 1, 2 * b - 1 - s_safe)
                    add((cout, 0, 0), vcnt * mm)
                    mn = ma - mm
                    add((cout, 0, 1), vcnt * mn)
                    add((cout, 1, 0), vcnt * mn)
                    add((cout, 1, 1), vcnt * (aa - 2 * ma + mm))
                elif sa == 1 and sb == 1:
                    add((cout, 1, 1), cnt * (valid & (s == 0)))
                else:
                    digit_ok = valid & (s < b)
                    s_dig = np.where(digit_ok, s, 0)
                    member = digit_ok & ind[s_dig]
                    if sa == 0:
                        add((cout, 0, 1), cnt * member)
                        add((cout, 1, 1), cnt * (digit_ok & ~member))
                    else:
                        add((cout, 1, 0), cnt * member)
                        add((cout, 1, 1), cnt * (digit_ok & ~member))
        states = new
    out = np.zeros(size, dtype=np.int64)
    for (c, _, _), arr in states.items():
        if c == 0:
            out += arr
    return out


def _pair_arrays(ctx: BasisContext, i: int) -> tuple[np.ndarray, np.ndarray]:
    cache = ctx.__dict__.setdefault("_bulk_pairs", {})
    got = cache.get(i)
    if got is None:
        table = [ctx._pair_for(i, r) for r in range(ctx.bases[i])]
        pa = np.array([t[0] for t in table], dtype=np.int64)
        pb = np.array([t[1] for t in table], dtype=np.int64)
        got = cache[i] = (pa, pb)
    return got


def represent_range(ctx: BasisContext, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """The deterministic represent() pair for every n in [0, nmax].

    Identical choices to the scalar path (both read the same smallest-pair
    tables), vectorized per digit length.
    """
    ctx.ensure_capacity_for(nmax)
    a_out = np.zeros(nmax + 1, dtype=np.int64)
    ap_out = np.zeros(nmax + 1, dtype=np.int64)
    prod = 1
    k = 0
    while prod <= nmax:
        b_top = ctx.bases[k]
        lo = prod
        prod *= b_top
        k += 1
        hi = min(nmax, prod - 1)
        if lo > hi:
            continue
        ns = np.arange(lo, hi + 1, dtype=np.int64)
        cur = ns.copy()
        carry = np.zeros(ns.shape, dtype=np.int64)
        a_val = np.zeros(ns.shape, dtype=np.int64)
        ap_val = np.zeros(ns.shape, dtype=np.int64)
        scale = 1
        for i in range(k - 1):
            b = ctx.bases[i]
            d = cur % b
            cur //= b
            pa, pb = _pair_arrays(ctx, i)
            need = (d - carry) % b
            da = pa[need]
            dap = pb[need]
            total = da + dap + carry
            carry = total // b
            if (carry > 1).any() or (total % b != d).any():
                raise RuntimeError(f"carry bookkeeping violated at level {i + 1}")
            a_val += da * scale
            ap_val += dap * scale
            scale *= b
        top = cur - carry
        if (top < 0).any() or (top >= b_top).any():
            raise RuntimeError("top digit left its positional range")
        a_out[lo : hi + 1] = a_val + top * scale
        ap_out[lo : hi + 1] = ap_val
    return a_out, ap_out


def sigma_brute_prefix(bitmap: np.ndarray, upto: int) -> np.ndarray:
    """Brute-force sigma for every n <= upto: exact integer self-convolution
    of the membership indicator (the pair scan, vectorized)."""
    ind = bitmap[: upto + 1].astype(np.int64)
    return np.convolve(ind, ind)[: upto + 1]


def sigma_brute_at(bitmap: np.ndarray, n: int) -> int:
    """Brute-force sigma at one n from a membership bitmap (dot-product scan)."""
    ind = bitmap.astype(np.int64) if bitmap.dtype != np.int64 else bitmap
    return int(ind[: n + 1] @ ind[n::-1])


@dataclass
class RangeVerifyReport:
    """Outcome of the whole-range basis checks on [0, nmax]."""

    nmax: int
    sigma_min: int
    sigma_max: int
    represent_ok: bool
    bound_ok: bool
    oracle_prefix: int
    oracle_samples: int
    oracle_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return not self.failures


def verify_range(
    ctx: BasisContext,
    nmax: int,
    oracle_prefix: int = 10**4,
    oracle_samples: int = 10**3,
    seed: int = SAMPLE_SEED,
) -> RangeVerifyReport:
    """Run every whole-range check on [0, nmax].

    Checks: sigma_exact >= 1 everywhere, represent() returns certified
    pairs everywhere, sigma_exact <= sigma_bound everywhere, and
    sigma_exact equals the brute-force count on the prefix
    [0, min(nmax, oracle_prefix)] plus oracle_samples seeded random points.
    """
    ctx.ensure_capacity_for(max(nmax, 1))
    failures: list[str] = []
    bitmap = membership_bitmap(ctx, nmax)
    sigma = sigma_exact_range(ctx, nmax)

    sigma_min = int(sigma.min())
    sigma_max = int(sigma.max())
    if sigma_min < 1:
        n_bad = int(np.argmin(sigma >= 1))
        failures.append(f"sigma_exact({n_bad}) = {int(sigma[n_bad])} < 1")

    # certified pairs
    a_arr, ap_arr = represent_range(ctx, nmax)
    ns = np.arange(nmax + 1, dtype=np.int64)
    sum_ok = a_arr + ap_arr == ns
    member_ok = bitmap[a_arr] & bitmap[ap_arr]
    rep_ok_arr = sum_ok & member_ok
    represent_ok = bool(rep_ok_arr.all())
    if not represent_ok:
        n_bad = int(np.argmin(rep_ok_arr))
        failures.append(
            f"represent({n_bad}) returned ({int(a_arr[n_bad])}, {int(ap_arr[n_bad])})"
            " which is not a certified pair"
        )

    # analytic ceiling, constant per digit length
    bound_arr = np.empty(nmax + 1, dtype=np.int64)
    bound_arr[0] = ctx.bound_for_length(1)
    prod = 1
    k = 0
    while prod <= nmax:
        lo = prod
        prod *= ctx.bases[k]
        k += 1
        hi = min(nmax, prod - 1)
        bk = ctx.bound_for_length(k)
        if bk > np.iinfo(np.int64).max:
            raise RuntimeError("analytic bound exceeds int64; range too large for batch check")
        bound_arr[lo : hi + 1] = bk
    bound_ok_arr = sigma <= bound_arr
    bound_ok = bool(bound_ok_arr.all())
    if not bound_ok:
        n_bad = int(np.argmin(bound_ok_arr))
        failures.append(
            f"sigma_exact({n_bad}) = {int(sigma[n_bad])} exceeds bound {int(bound_arr[n_bad])}"
        )

    # brute-force oracle: full prefix ...
    prefix = min(nmax, oracle_prefix)
    brute = sigma_brute_prefix(bitmap, prefix)
    oracle_ok_arr = sigma[: prefix + 1] == brute
    oracle_ok = bool(oracle_ok_arr.all())
    if not oracle_ok:
        n_bad = int(np.argmin(oracle_ok_arr))
        failures.append(
            f"sigma_exact({n_bad}) = {int(sigma[n_bad])} but brute force finds {int(brute[n_bad])}"
        )

    # ... plus seeded random samples across the whole range
    samples = oracle_samples if nmax > prefix else 0
    if samples:
        rng = np.random.default_rng(seed)
        picks = rng.integers(0, nmax + 1, size=samples)
        ind64 = bitmap.astype(np.int64)
        for n in picks:
            n = int(n)
            got = int(ind64[: n + 1] @ ind64[n::-1])
            if got != int(sigma[n]):
                failures.append(
                    f"sigma_exact({n}) = {int(sigma[n])} but brute force finds {got}"
                )
                oracle_ok = False
                break

    return RangeVerifyReport(
        nmax=nmax,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        represent_ok=represent_ok,
        bound_ok=bound_ok,
        oracle_prefix=prefix,
        oracle_samples=samples,
        oracle_ok=oracle_ok,
        failures=failures,
    )


def growth_rows(ctx: BasisContext, nmax: int, step: int) -> list[tuple[int, int, int]]:
    """(N, max sigma over (N-step, N], bound at N) for N = step, 2*step, ...

    Only complete windows are emitted.
    """
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    sigma = sigma_exact_range(ctx, nmax)
    rows = []
    for upper in range(step, nmax + 1, step):
        window_max = int(sigma[upper - step + 1 : upper + 1].max())
        rows.append((upper, window_max, ctx.sigma_bound(upper)))
    return rows

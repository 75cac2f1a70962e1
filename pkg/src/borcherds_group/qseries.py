"""Exact integer q-series: the J-function, partitions and gnome multiplicities."""

from __future__ import annotations

from fractions import Fraction
from math import comb


def _mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _inv(a: list[int], n: int) -> list[int]:
    """1/a for an integer series with a[0] = ±1."""
    if a[0] not in (1, -1):
        raise ValueError("series must have unit constant term")
    out = [0] * n
    out[0] = a[0]
    for k in range(1, n):
        s = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s * a[0]
    return out


def _sigma(k: int, n: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def _euler_product_power(e: int, n: int, step: int = 1) -> list[int]:
    """prod_{m>=1} (1 - q^{step*m})^e mod q^n, for integer e (may be negative)."""
    out = [1] + [0] * (n - 1)
    m = step
    while m < n:
        if e >= 0:
            factor = [0] * n
            for k in range(0, e + 1):
                if k * m >= n:
                    break
                factor[k * m] = (-1) ** k * comb(e, k)
        else:
            factor = [0] * n
            k = 0
            while k * m < n:
                factor[k * m] = comb(-e + k - 1, k)
                k += 1
        out = _mul(out, factor, n)
        m += step
    return out


def _eisenstein(k: int, c: int, n: int) -> list[int]:
    return [1] + [c * _sigma(k - 1, m) for m in range(1, n)]


def j_coefficients(nmax: int) -> list[int]:
    """[c(-1), c(0), ..., c(nmax)] of J = j - 744, from E4^3/Δ."""
    if nmax < -1:
        raise ValueError("nmax must be >= -1")
    n = nmax + 2  # coefficients of q^{-1} .. q^{nmax} after dividing by q
    e4 = _eisenstein(4, 240, n)
    num = _mul(_mul(e4, e4, n), e4, n)
    out = _mul(num, _euler_product_power(-24, n), n)
    out[1] -= 744
    return out[: nmax + 2]


def j_coefficients_eta(nmax: int) -> list[int]:
    """Second route: j = (t + 256)^3 / t^2 with t = (η(τ)/η(2τ))^24.

    t = q^{-1} prod (1 + q^m)^{-24}, a Hauptmodul for Γ0(2).
    """
    n = nmax + 2
    # u = q t = prod (1+q^m)^{-24} = prod (1-q^{2m})^{-24} (1-q^m)^{24}
    u = _mul(_euler_product_power(24, n + 2), _euler_product_power(-24, n + 2, 2), n + 2)
    # (t+256)^3/t^2 = t + 768 + 3*256^2 / t + 256^3 / t^2
    #   = q^{-1} u + 768 + 196608 q u^{-1} + 16777216 q^2 u^{-2}
    ui = _inv(u, n + 2)
    ui2 = _mul(ui, ui, n + 2)
    out = [0] * (n)
    for k in range(n):  # index k <-> q^{k-1}
        out[k] += u[k]
        if k == 1:
            out[k] += 768
        if k >= 2:
            out[k] += 196608 * ui[k - 2]
        if k >= 3:
            out[k] += 16777216 * ui2[k - 3]
    out[1] -= 744
    return out[: nmax + 2]


def j_coefficients_e6(nmax: int) -> list[int]:
    """Third route: j = 1728 + E6^2/Δ."""
    n = nmax + 2
    e6 = _eisenstein(6, -504, n)
    out = _mul(_mul(e6, e6, n), _euler_product_power(-24, n), n)
    out[1] += 1728 - 744
    return out[: nmax + 2]


_P = [1]


def partition_p(n: int) -> int:
    """Number of partitions of n (0 for n < 0), by Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    while len(_P) <= n:
        m = len(_P)
        s = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            s += sign * _P[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                s += sign * _P[m - g2]
            k += 1
        _P.append(s)
    return _P[n]


def partitions_upto(n: int) -> list[int]:
    return [partition_p(k) for k in range(n + 1)]


def two_one(n: int) -> int:
    """II_1(n) = p(n) - p(n-1)."""
    return partition_p(n) - partition_p(n - 1)


# --- gnome Lie algebra ------------------------------------------------------
# Roots are written in light-cone coordinates <l, n> with <l,n>^2 = -2ln.
# alpha_{-1} = <1,-1>, delta = <0,1>, and <l, n> = l*alpha_{-1} + (l+n)*delta.

def gnome_mult(l: int, n: int) -> int:
    """Root multiplicity of <l, n>: II_1(1 - <l,n>^2/2) = p(1+ln) - p(ln)."""
    if l < 1 or n < 1:
        raise ValueError(f"<{l},{n}> is not a positive imaginary root")
    return two_one(1 + l * n)


def gnome_mult_alternative(l: int, n: int) -> int:
    """The other reading of II_1(1+mn): alpha = m alpha_{-1} + n' delta, m = l, n' = l + n."""
    if l < 1 or n < 1:
        raise ValueError(f"<{l},{n}> is not a positive imaginary root")
    return two_one(1 + l * (l + n))


def _series_mul(a: dict, b: dict, T: int) -> dict:
    out: dict = {}
    for (l1, t1), x in a.items():
        for (l2, t2), y in b.items():
            if t1 + t2 > T:
                continue
            k = (l1 + l2, t1 + t2)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def gnome_free_product(T: int, mult=gnome_mult) -> dict:
    """prod over positive roots β ≠ α_{-1} of (1 - e^{-β})^{mult β}, to δ-degree T.

    Keys are (l, t) for the root l*α_{-1} + t*δ, i.e. light-cone <l, t - l>.
    """
    out = {(0, 0): 1}
    for t in range(2, T + 1):
        for l in range(1, t):
            M = mult(l, t - l)
            factor = {}
            k = 0
            while k * t <= T:
                c = (-1) ** k * comb(M, k)
                if c:
                    factor[(k * l, k * t)] = c
                k += 1
            out = _series_mul(out, factor, T)
    return out


def gnome_character(T: int, mult=gnome_mult) -> dict:
    """ch V' = 1 - prod(...), keyed by light-cone <l, n> with l + n <= T."""
    prod = gnome_free_product(T, mult)
    out = {}
    for (l, t), c in prod.items():
        if t == 0:
            continue
        out[(l, t - l)] = -c
    return {k: v for k, v in out.items() if v}


def gnome_simple_multiplicities(T: int, mult=gnome_mult) -> dict:
    """m_<l,n> for n >= l >= 1, l + n <= T, from ch V' split into sl2 strings.

    The module generated by f_{-α}, α = <l,n>, has weights n - l, ..., l - n
    at the roots <l+s, n-s>, so m_<l,n> = c<l,n> - c<l-1,n+1>.
    """
    ch = gnome_character(T, mult)
    out = {}
    for t in range(2, T + 1):
        for l in range(1, t // 2 + 1):
            n = t - l
            out[(l, n)] = ch.get((l, n), 0) - ch.get((l - 1, n + 1), 0)
    return out


def _mobius(n: int) -> int:
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def free_lie_root_mult(simple: dict, T: int) -> dict:
    """Root multiplicities of the free Lie algebra on V' from its generators.

    ``simple`` maps <l,n> (n >= l) to m_<l,n>; each contributes an sl2 string.
    Uses log 1/(1 - ch V') = Σ_β Σ_k mult(β) e^{-kβ}/k and Möbius inversion.
    """
    ch: dict = {}
    for (l, n), m in simple.items():
        if not m:
            continue
        for s in range(0, n - l + 1):
            key = (l + s, l + n)  # (α_{-1}-coord, δ-coord)
            ch[key] = ch.get(key, 0) + m
    ch = {k: v for k, v in ch.items() if k[1] <= T}
    # L = -log(1 - ch) = Σ ch^k / k
    acc: dict = {}
    power = {(0, 0): 1}
    for k in range(1, T + 1):
        power = _series_mul(power, ch, T)
        if not power:
            break
        for key, v in power.items():
            acc[key] = acc.get(key, 0) + Fraction(v, k)
    out = {}
    for (l, t), _ in sorted(acc.items()):
        total = Fraction(0)
        for d in range(1, t + 1):
            if t % d or l % d:
                continue
            total += Fraction(_mobius(d), d) * acc.get((l // d, t // d), 0)
        # acc(β) = Σ_{d|β} mult(β/d)/d, so mult(β) = Σ_{d|β} μ(d)/d · acc(β/d)
        out[(l, t - l)] = total
    return out


def gnome_convention_evidence(T: int = 10) -> dict:
    """Compare the two readings of II_1(1+mn) on the window l + n <= T."""
    report = {}
    for name, fn in (("light-cone", gnome_mult), ("alpha-delta", gnome_mult_alternative)):
        m = gnome_simple_multiplicities(T, fn)
        sym = all(fn(l, n) == fn(n, l) for l in range(1, T) for n in range(1, T - l + 1))
        neg = sorted(k for k, v in m.items() if v < 0)
        rec = free_lie_root_mult(m, T)
        mismatch = sorted((l, n) for l in range(1, T) for n in range(1, T - l + 1)
                          if rec.get((l, n), 0) != fn(l, n))
        report[name] = {
            "weyl_symmetric": sym,
            "free_lie_mismatches": mismatch,
            "negative_simple_multiplicities": neg,
            "m11": m.get((1, 1)),
        }
    return report

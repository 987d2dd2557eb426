"""Generate ginibre_rates/_temme_coeffs.py in exact rational arithmetic.

c_0(eta) = 1/(lambda - 1) - 1/eta, and
c_k(eta) = eta^-1 c_{k-1}'(eta) + (-1)^k g_k / (lambda - 1),
with eta^2 / 2 = lambda - 1 - log(lambda) and g_k the Stirling coefficients.
Each c_k is analytic at eta = 0; its first TERMS Taylor coefficients are kept.

Usage: python tools/gen_temme_coeffs.py [output path]
"""

import sys
from fractions import Fraction as F
from pathlib import Path

WORK = 60
TERMS = 42
ORDERS = 6
STIRLING = [F(1), F(1, 12), F(1, 288), F(-139, 51840), F(-571, 2488320), F(163879, 209018880), F(5246819, 75246796800)]

HEADER = '''"""Taylor coefficients of the uniform-expansion functions c_k(eta) about eta = 0.

Row k holds the coefficients of c_k in increasing powers of eta. They were
generated in exact rational arithmetic from the recursion
c_k = eta^-1 c_{k-1}'(eta) + (-1)^k g_k / (lambda - 1), with g_k the Stirling
coefficients of the scaled gamma function, and rounded to double precision.
"""
'''


def mul(a, b, n):
    out = [F(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def reciprocal(a, n):
    out = [F(0)] * n
    out[0] = 1 / a[0]
    for k in range(1, n):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)) / a[0]
    return out


def sqrt_unit(a, n):
    """Square root of a series with leading coefficient 1."""
    out = [F(0)] * n
    out[0] = F(1)
    for k in range(1, n):
        out[k] = (a[k] - sum(out[j] * out[k - j] for j in range(1, k))) / 2
    return out


def compose(a, b, n):
    """a(b(x)) for b(0) = 0."""
    out, power = [F(0)] * n, [F(1)] + [F(0)] * (n - 1)
    for k in range(n):
        if k:
            power = mul(power, b, n)
        if a[k]:
            out = [o + a[k] * p for o, p in zip(out, power)]
    return out


def coefficients():
    m = WORK + 4
    # eta = u sqrt(2(u - log(1 + u)) / u^2) with u = lambda - 1
    g = [F(2 * (-1) ** j, j) for j in range(2, m + 2)]
    eta_of_u = [F(0)] + sqrt_unit(g, m)[: m - 1]
    u = [F(0), F(1)] + [F(0)] * (m - 2)
    for _ in range(m):
        r = compose(eta_of_u, u, m)
        r[1] -= 1
        if not any(r):
            break
        u = [a - b for a, b in zip(u, r)]
    # 1/u as a Laurent series starting at eta^-1
    inv_u = {k - 1: c for k, c in enumerate(reciprocal(u[1:], m - 1))}
    c0 = dict(inv_u)
    c0[-1] -= 1
    assert c0.pop(-1) == 0
    rows = [c0]
    for k in range(1, ORDERS + 1):
        new = {}
        for p, v in rows[-1].items():
            if p:
                new[p - 2] = new.get(p - 2, F(0)) + p * v
        for p, v in inv_u.items():
            new[p] = new.get(p, F(0)) + (-1) ** k * STIRLING[k] * v
        assert new.pop(-1, 0) == 0
        assert min(new) >= 0
        rows.append(new)
    return [[float(row[j]) for j in range(TERMS)] for row in rows]


def render(rows):
    lines = [HEADER, "TEMME_D = ("]
    for row in rows:
        lines.append("    (")
        for i in range(0, len(row), 3):
            lines.append("        " + " ".join(f"{v!r}," for v in row[i : i + 3]))
        lines.append("    ),")
    lines.append(")")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    default = Path(__file__).resolve().parents[1] / "src" / "ginibre_rates" / "_temme_coeffs.py"
    Path(sys.argv[1] if len(sys.argv) > 1 else default).write_text(render(coefficients()))

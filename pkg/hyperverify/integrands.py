"""
Integrands of the integral representations checked by the harness.

Every factory takes d and returns a vectorised callable in the calling
convention of ``hyperverify.quadrature``; coordinates arrive with their exact
complements and every factor 1 - (product of coordinates) is formed from those
complements.
"""
from hyperverify.hypergeometric import gauss_2f1_array


def one_minus_product(values, complements):
    """1 - v1 v2 ... vn computed as c1 + v1 (1 - v2 ... vn)."""
    result = complements[-1]
    for value, complement in zip(values[-2::-1], complements[-2::-1]):
        result = complement + value * result
    return result


def base_2f1(d, z, zc):
    """2F1(1, d; 2 - d; z), the function appearing throughout the derivation."""
    return gauss_2f1_array(1.0, d, 2.0 - d, z, zc)


def kernel_integrand(p, q, d):
    """(1 - p z)^(-d) (1 - q z)^(-d) on [0, 1]."""
    def f(z, zc):
        return ((1.0 - p) + p * zc) ** -d * ((1.0 - q) + q * zc) ** -d
    return f


def main_integrand(d):
    """x^(3-3d) y^(1-d) (1 - x y)^(-d) 2F1(1, d; 2-d; x) 2F1(1, d; 2-d; y)."""
    def f(x, y, xc, yc):
        gx = base_2f1(d, x, xc)
        gy = base_2f1(d, y, yc)
        return x ** (3 - 3 * d) * gx * y ** (1 - d) * gy * (xc + x * yc) ** -d
    return f


def main_corner_exponent(d):
    """Homogeneity degree of the main integrand at (1, 1)."""
    return -d + 2 * min(0.0, 1.0 - 2.0 * d)


def j2_plane_integrand(d):
    """
    J2 after the z5 integration:
    (1-d)^-2 z2^(3-3d) z3^(1-d) (1-z2 z3)^(-2d) (1-z3)^(1-d) g(z3) g(z2 (1-z3)/(1-z2 z3)).
    """
    def f(z2, z3, z2c, z3c):
        one_minus = z2c + z2 * z3c
        inner = base_2f1(d, z2 * z3c / one_minus, z2c / one_minus)
        outer = base_2f1(d, z3, z3c)
        return (z2 ** (3 - 3 * d) * z3 ** (1 - d) * one_minus ** (-2 * d)
                * z3c ** (1 - d) * outer * inner) / (1 - d) ** 2
    return f


def j2_plane_corner_exponent(d):
    return 2 - 5 * d if d > 0.5 else 1 - 3 * d


def z4_integrand(z2, z3, d, k=0):
    """(1 - z3 z4)^(-2d-k) (1 - z2 z3 z4)^(-d) (1 - z4)^(1-d+k), the z4 factor of I1."""
    def f(z4, z4c):
        return (((1 - z3) + z3 * z4c) ** (-2 * d - k)
                * ((1 - z2 * z3) + z2 * z3 * z4c) ** -d
                * z4c ** (1 - d + k))
    return f


def quad4d_integrand(d):
    """
    Four-fold form of the nested integral over the simplex after
    y2 = z2, y3 = y2 z3, y4 = y3 z4, y5 = y4 z5.
    """
    def f(z, zc):
        z2, z3, z4, z5 = z
        c2, c3, c4, c5 = zc
        return (z2 ** (3 - 3 * d) * z3 ** (2 - d) * z4
                * (one_minus_product((z2, z3), (c2, c3))
                   * one_minus_product((z3, z4), (c3, c4))
                   * one_minus_product((z2, z3, z4), (c2, c3, c4))
                   * one_minus_product((z3, z4, z5), (c3, c4, c5))
                   * one_minus_product((z4, z5), (c4, c5))) ** -d)
    return f


def j1_integrand(d):
    """J1 = J1(a) - J1(b) over (z2, z3, z5)."""
    def f(z, zc):
        z2, z3, z5 = z
        c2, c3, c5 = zc
        one_35 = one_minus_product((z3, z5), (c3, c5))
        one_235 = one_minus_product((z2, z3, z5), (c2, c3, c5))
        g = base_2f1(d, z2 * one_35 / one_235, c2 / one_235)
        return (z2 ** (3 - 3 * d) * z3 ** (1 - d)
                * one_minus_product((z2, z3), (c2, c3)) ** -d
                * one_35 ** (1 - 2 * d) * c5 ** -d * one_235 ** -d * g) / (1 - d)
    return f


def j2_integrand(d):
    def f(z, zc):
        z2, z3, z5 = z
        c2, c3, c5 = zc
        one_23 = one_minus_product((z2, z3), (c2, c3))
        g = base_2f1(d, z2 * c3 / one_23, c2 / one_23)
        return (z2 ** (3 - 3 * d) * z3 ** (1 - d) * one_23 ** (-2 * d) * c3 ** (1 - d)
                * one_minus_product((z3, z5), (c3, c5)) ** -d * c5 ** -d * g) / (1 - d)
    return f


def i1_integrand(d):
    """I1 over (z2, z3, z4), the first term after the z5 integration."""
    def f(z, zc):
        z2, z3, z4 = z
        c2, c3, c4 = zc
        one_34 = one_minus_product((z3, z4), (c3, c4))
        g = base_2f1(d, z3 * c4 / one_34, c3 / one_34)
        return (z2 ** (3 - 3 * d) * z3 ** (2 - d)
                * one_minus_product((z2, z3), (c2, c3)) ** -d
                * one_34 ** (-2 * d)
                * one_minus_product((z2, z3, z4), (c2, c3, c4)) ** -d
                * c4 ** (1 - d) * g) / (d - 1)
    return f


def brychkov_integrand(alpha, a, b, c, a2, b2, c2):
    """x^(α-1) (1-x)^(c-1) 2F1(a, b; c; 1-x) 2F1(a2, b2; c2; 1-x)."""
    def f(x, xc):
        return (x ** (alpha - 1) * xc ** (c - 1)
                * gauss_2f1_array(a, b, c, xc, x) * gauss_2f1_array(a2, b2, c2, xc, x))
    return f

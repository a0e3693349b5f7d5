"""Shared fixtures and frozen oracle values.

The decimal strings below were produced by independent oracles before the
library was written: theta values come from mpmath.jtheta (a separate
implementation of the same functions) evaluated at 60 significant digits
with derivatives by mpmath.diff; g and the admissibility factors come
from direct high-precision evaluation of their closed forms; the six
bracket constants come from an exact symbolic expansion of the envelope
products (rational coefficients times powers of pi, recorded here as
exact Fractions).  Tests assert that the library's enclosures contain
these values; they are never fed back into the library.
"""

from fractions import Fraction

import pytest
from mpmath import mp

from thetacert import Enclosure, EvalConfig, precision


@pytest.fixture
def cfg():
    return EvalConfig()



# transcribed from a standard 50-digit table of pi, independent of this code
PI_50 = "3.14159265358979323846264338327950288419716939937510"

# mpmath.jtheta oracles (60 dps), frozen before the build
THETA4_AT_1 = "0.91357913815611682140724259340122208970196391639347"
THETA4_AT_10 = "0.99999999999995457797863351812322641449521812904911"
THETA4_AT_HALF = "0.58797428289171205873317245878220994155912125891491"
THETA2_AT_2 = "0.41576060259602703231450713628474392464887307352961"

THETA4_DERIVS_AT_1 = {
    1: "0.2714334098572979044123093910061595864483",
    2: "-0.851907158546229427374568425696497632166",
    3: "2.665964859758449633590251108171232043109",
}
THETA2_DERIVS_AT_1 = {
    1: "-0.7282229789353563151159306877067706312993",
    2: "0.6475774246427519019177916923728976944553",
    3: "-1.043247915599049393058048426894086567599",
}

F_AT_1 = "0.2971099038066191597091924851761161358148"
F_PRIME_AT_1 = "-0.4265485898799569804978276875359467589682"
F_SECOND_AT_1 = "0.312914517985627062342440253996542395308"
F_SECOND_AT_HALF = "0.0116376024292205823934736311076146301529"
F_SECOND_AT_2 = "0.1966432529180508006373651066771513225227"
F_AT_10 = "1.426974886361445672171820689643526053081e-11"

G_AT_1 = "55.50873816051832654793942009437783179004"
G_PRIME_AT_1 = "3584.503671164381534525486909581056000761"
G_SECOND_AT_1 = "53472.16190675611214814675065349407607647"
QUAD_ROOT = "0.8696387816055827210490940250579981654663"

LOWER_ENVELOPE_1_0 = "0.9135791322176027896035474960472590103731"

# e^{9 pi/4} 9^{-nu} int_24^oo t^nu e^{-pi t/4} dt, 30 digits
ADMISSIBILITY_FACTORS = {
    0: "9.73865075884610354227143596866e-6",
    1: "2.73474726078704938340237099842e-5",
    2: "7.69903795235505940344039986183e-5",
    3: "2.17349405573747465262649348967e-4",
}

H_AT_1 = "0.2385965910918037786180493797"
H_AT_HALF = "0.00236558473909953920992181933675"

# exact values of the six bracket constants: rational multiples of pi^2/pi^3
GREEK_EXACT = {
    "alpha": (Fraction(12799493, 200000), 3),
    "beta": (Fraction(128013, 2000), 2),
    "gamma": (Fraction(5122635254513, 80000000000), 3),
    "delta": (Fraction(640146001297, 10000000000), 2),
    "epsilon": (Fraction(32805956819061, 10 ** 15), 3),
    "zeta": (Fraction(1012517212581, 125 * 10 ** 12), 2),
}

# the printed approximations these constants are reported as
GREEK_PRINTED = {
    "alpha": "1984.32",
    "beta": "631.718",
    "gamma": "1985.41",
    "delta": "631.798",
    "epsilon": "1.01719",
    "zeta": "0.0799451",
}

WITNESS_21_Y = 0.05
WITNESS_21_VALUE = "-21.770330759747983"


def _print_ulp(decimal: str) -> float:
    """One unit in the last printed place of a decimal literal."""
    from decimal import Decimal

    d = Decimal(decimal)
    digits = len(d.as_tuple().digits)
    return float(Decimal(1).scaleb(d.adjusted() - digits + 1))


def assert_contains(enc: Enclosure, decimal: str, slack: float = 0.0):
    """The enclosure must contain the oracle decimal up to its print rounding."""
    with precision(256):
        oracle = Enclosure(decimal)
        pad = Enclosure(max(slack, 2 * _print_ulp(decimal)))
        widened = Enclosure((oracle - pad).lo, (oracle + pad).hi)
        assert enc.intersects(widened), f"{enc!r} misses oracle {decimal}"


def assert_within(enc: Enclosure, decimal: str, tol: float):
    """|midpoint - oracle| <= tol and enclosure width <= tol."""
    with precision(256):
        oracle = Enclosure(decimal)
        diff = abs(enc - oracle)
        assert diff.hi <= tol, f"{enc!r} differs from {decimal} by {diff.hi} > {tol}"


def mp_scalar(fn, y, n=0, dps=40):
    """High-precision scalar oracle via mpmath numerical differentiation."""
    old = mp.dps
    try:
        mp.dps = dps
        y = mp.mpf(y)
        return fn(y) if n == 0 else mp.diff(fn, y, n)
    finally:
        mp.dps = old


def mp_theta4(y):
    return mp.jtheta(4, 0, mp.e ** (-mp.pi * y))


def mp_theta2(y):
    return mp.jtheta(2, 0, mp.e ** (-mp.pi * y))

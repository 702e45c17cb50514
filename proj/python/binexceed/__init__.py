"""Exact binomial exceedance probabilities P(X > EX) and certified checks of the 1/4 bound.

Rationals are passed in as ``int``, ``Fraction`` or ``"a/b"`` strings and
returned as ``fractions.Fraction``.
"""

from fractions import Fraction

from . import _core

__all__ = [
    "c_enclosure",
    "b_enclosure",
    "ln_enclosure",
    "exp_enclosure",
    "sqrt_enclosure",
    "pmf",
    "survival",
    "tail_gt_mean",
    "check_theorem",
    "check_proposition",
    "optimality_search",
    "classify_case",
    "berry_esseen_epsilon",
    "verify_main_proof",
    "anderson_samuels_sweep",
    "run_cli",
]


def _text(x):
    if isinstance(x, str):
        return x
    return str(Fraction(x))


def _pair(t):
    return Fraction(t[0]), Fraction(t[1])


def c_enclosure(bits=64):
    return _pair(_core.c_enclosure(bits))


def b_enclosure(bits=64):
    return _pair(_core.b_enclosure(bits))


def ln_enclosure(x, bits=64):
    return _pair(_core.ln_enclosure(_text(x), bits))


def exp_enclosure(x, bits=64):
    return _pair(_core.exp_enclosure(_text(x), bits))


def sqrt_enclosure(x, bits=64):
    return _pair(_core.sqrt_enclosure(_text(x), bits))


def pmf(n, p, k):
    return Fraction(_core.pmf(n, _text(p), k))


def survival(n, p, k):
    return Fraction(_core.survival(n, _text(p), k))


def tail_gt_mean(n, p):
    r = _core.tail_gt_mean(n, _text(p))
    return {"mean": Fraction(r["mean"]), "m": r["m"], "tail": Fraction(r["tail"])}


def check_theorem(n, p, bits=4096):
    r = _core.check_theorem(n, _text(p), bits)
    r["tail"] = Fraction(r["tail"])
    return r


def check_proposition(n, p, bits=4096):
    r = _core.check_proposition(n, _text(p), bits)
    if "witness" in r:
        r["witness"] = _pair(r["witness"])
    return r


def optimality_search(c1, n_max):
    r = _core.optimality_search(_text(c1), n_max)
    for key in ("c1", "p", "tail"):
        if r[key] is not None:
            r[key] = Fraction(r[key])
    r["limit_enclosure"] = _pair(r["limit_enclosure"])
    return r


def classify_case(n, p):
    return _core.classify_case(n, _text(p))


def berry_esseen_epsilon(n, p, bits=64):
    return _pair(_core.berry_esseen_epsilon(n, _text(p), bits))


def verify_main_proof(n, p):
    """JSON text of the main-proof report for one (n, p)."""
    return _core.verify_main_proof(n, _text(p))


def anderson_samuels_sweep(m_max, n_max):
    return _core.anderson_samuels_sweep(m_max, n_max)


def run_cli(*args):
    """Run the command line in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])

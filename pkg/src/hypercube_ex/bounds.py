"""Exact exponent bookkeeping for ex(Q_n, C_2l) bounds.

Every exponent is the power of n in a bound of the form ``n^e * 2^n`` (or
``n^e`` for hypergraph Turan numbers) and is held as a ``Fraction``.
Bounds quoted relative to ``||Q_n|| = n 2^(n-1)`` are moved to the
``n^e 2^n`` scale by adding 1 to the exponent; the constant 1/2 is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameterError

Exponent = Fraction


def _odd_ell(ell: int) -> None:
    if not isinstance(ell, int) or ell < 7 or ell % 2 == 0:
        raise InvalidParameterError(f"ell must be an odd integer >= 7, got {ell!r}")


def theorem1_exponent(ell: int) -> Exponent:
    """``5/6 + 1/(3(l-3))`` for odd ``l >= 7``."""
    _odd_ell(ell)
    return Fraction(5, 6) + Fraction(1, 3 * (ell - 3))


@dataclass(frozen=True)
class Pipeline:
    ell: int
    gamma: Exponent
    sigma: Exponent
    alpha_exp: Exponent
    final: Exponent

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "gamma": str(self.gamma),
            "sigma": str(self.sigma),
            "alpha_exp": str(self.alpha_exp),
            "final": str(self.final),
        }


def theorem1_pipeline(ell: int) -> Pipeline:
    """Chain the even-cycle, two-lift and partite-representation steps.

    gamma: ex(n, C_{l-3} + pendant) = O(n^gamma), gamma = 1 + 2/(l-3)
    sigma: two-lift bound, (gamma + 4)/2
    alpha_exp: alpha = n^(sigma - 3) in ex(n, H) <= alpha n^3
    final: ex(Q_n, C_2l) <= alpha^(1/3) n 2^n
    """
    _odd_ell(ell)
    gamma = 1 + Fraction(2, ell - 3)
    sigma = (gamma + 4) / 2
    alpha_exp = sigma - 3
    final = alpha_exp / 3 + 1
    return Pipeline(ell, gamma, sigma, alpha_exp, final)


def lower_bound_exponent(ell: int) -> Exponent:
    """Random-colouring lower bound ``1/2 + 1/(4l-2)``, any ``l >= 2``."""
    if not isinstance(ell, int) or ell < 2:
        raise InvalidParameterError(f"ell must be an integer >= 2, got {ell!r}")
    return Fraction(1, 2) + Fraction(1, 4 * ell - 2)


def conlon_exponent(k: int) -> Exponent:
    """C_{4k}: ``c_k n^(-1/2 + 1/(2k)) ||Q_n||`` normalised, k >= 2."""
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"k must be an integer >= 2, got {k!r}")
    return 1 + Fraction(-1, 2) + Fraction(1, 2 * k)


def furedi_ozkahya_q(k: int) -> Fraction:
    if not isinstance(k, int) or k < 3:
        raise InvalidParameterError(f"k must be an integer >= 3, got {k!r}")
    if k in (3, 5, 7):
        return Fraction(1, 2 * k + 1)
    return Fraction(1, 16) - Fraction(1, 16 * (k - 1))


def furedi_ozkahya_exponent(k: int) -> Exponent:
    """C_{4k+2}: ``O(n^(-q_k) ||Q_n||)`` normalised to ``1 - q_k``."""
    return 1 - furedi_ozkahya_q(k)


TOMON = "2/3 + delta, delta = O(log l / l)"


@dataclass(frozen=True)
class LiteratureRow:
    name: str
    cycle: int
    kind: str
    exponent: Exponent | None
    symbolic: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "cycle_length": self.cycle,
            "kind": self.kind,
            "exponent": str(self.exponent) if self.exponent is not None else self.symbolic,
            "value": float(self.exponent) if self.exponent is not None else None,
        }


def literature_exponents(ell: int) -> list[LiteratureRow]:
    """Every bound on ex(Q_n, C_2l) that applies to this ``l``, on the n^e 2^n scale."""
    if not isinstance(ell, int) or ell < 2:
        raise InvalidParameterError(f"ell must be an integer >= 2, got {ell!r}")
    L = 2 * ell
    rows = [LiteratureRow("random colouring (lower)", L, "lower", lower_bound_exponent(ell))]
    if ell % 2 == 0 and ell // 2 >= 2:
        rows.append(LiteratureRow("Conlon C_4k", L, "upper", conlon_exponent(ell // 2)))
    if ell % 2 == 1 and (ell - 1) // 2 >= 3:
        k = (ell - 1) // 2
        rows.append(LiteratureRow("Furedi-Ozkahya C_4k+2", L, "upper", furedi_ozkahya_exponent(k)))
        rows.append(LiteratureRow("two-lift representation", L, "upper", theorem1_exponent(ell)))
        rows.append(LiteratureRow("Tomon", L, "upper", None, TOMON))
    return rows

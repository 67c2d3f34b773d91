# -*- coding: utf-8 -*-
#
import math
import sys
from typing import Optional

from contracta.consts import HOLDS, VIOLATED
from contracta.errors import UsageError

from .certificate import Certificate, PairVerdict
from .meir_keeler import MeirKeelerModulus
from .simulation import SimulationFunction


def check_lambda(lam) -> float:
    try:
        lam = float(lam)
    except (TypeError, ValueError):
        raise UsageError("Banach lambda must be a real number, got {!r}.".format(lam))
    if not (0.0 <= lam < 1.0):
        raise UsageError("Banach lambda must lie in [0, 1), got {!r}.".format(lam))
    return lam


class BanachCertificate(Certificate):
    """d(Tp, Tq) <= lambda * d(p, q) with a fixed lambda in [0, 1)."""

    __slots__ = ('lam',)

    def __init__(self, lam: float, name: Optional[str] = None):
        self.lam = check_lambda(lam)
        super(BanachCertificate, self).__init__(name or "banach({!r})".format(self.lam))

    @classmethod
    def certificate_kind(cls):
        return "banach"

    @classmethod
    def certificate_parameters(cls):
        return ['lambda']

    @classmethod
    def from_dict(cls, entry: dict) -> 'BanachCertificate':
        try:
            lam = entry['lambda']
        except KeyError:
            raise UsageError("A banach certificate needs a 'lambda' parameter.")
        return cls(lam, name=entry.get('name'))

    def judge(self, distance, mapped_distance, slack=0.0, epsilon=None) -> PairVerdict:
        margin = mapped_distance - self.lam * distance
        status = HOLDS if margin <= slack else VIOLATED
        return PairVerdict(status, margin, distance, mapped_distance)

    def to_dict(self) -> dict:
        return {'kind': self.certificate_kind(), 'name': self.name, 'lambda': self.lam}


def banach_holds(cert: BanachCertificate, map, p, q, slack: float = 0.0) -> PairVerdict:
    return cert.evaluate(map, p, q, slack)


def banach_as_z(cert: BanachCertificate) -> SimulationFunction:
    """The simulation function zeta(t, s) = lambda * s - t, whose Z-inequality is the Banach one."""
    return SimulationFunction("{!r}*s - t".format(cert.lam), name="banach_as_z({!r})".format(cert.lam))


def banach_mk_modulus(cert: BanachCertificate, diameter: Optional[float] = None) -> MeirKeelerModulus:
    """
    delta(eps) = eps * (1 - lambda) / lambda, capped at diameter when one is given.
    A zero lambda sends every pair to distance 0, so any delta works: it is the
    diameter when that is finite, otherwise the largest finite double.
    """
    lam = cert.lam
    if diameter is not None and not diameter > 0:
        raise UsageError("Meir-Keeler modulus cap must be positive, got {!r}.".format(diameter))
    if lam == 0.0:
        if diameter is None or not math.isfinite(diameter):
            diameter = sys.float_info.max
        return MeirKeelerModulus("{!r}".format(float(diameter)), name="banach_mk(0.0)")
    if diameter is not None and not math.isfinite(diameter):
        diameter = None
    return MeirKeelerModulus(
        "eps*(1 - {!r})/{!r}".format(lam, lam), cap=diameter, name="banach_mk({!r})".format(lam)
    )

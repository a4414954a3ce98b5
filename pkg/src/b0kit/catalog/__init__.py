"""Transcribed presentations of the order-p^6 isoclinism family representatives.

Each family is a DSL file under ``data/`` with ``prime p``; instantiating one
evaluates the exponent expressions at a concrete prime.  Families whose
presentations were never printed are listed with verdict ``NotTranscribed``
so callers can tell "unknown here" from "trivial".
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from importlib import resources

from ..errors import InconsistentPresentation, PreconditionError, PresentationError
from ..pc.elements import check_consistency
from ..pc.presentation import PcPresentation, is_prime, parse_presentation
from .arithmetic import phi43_kl, smallest_nonresidue, smallest_primitive_root

__all__ = [
    "FamilyEntry", "family_presentation", "family_source", "list_families", "get_family",
    "phi43_kl", "smallest_nonresidue", "smallest_primitive_root",
]

# Table 1: nilpotency class and whether B0 vanishes, for Phi_2 .. Phi_43
_TABLE1 = {
    2: (2, True), 3: (3, True), 4: (2, True), 5: (2, True), 6: (3, True), 7: (3, True),
    8: (3, True), 9: (4, True), 10: (4, False), 11: (2, True), 12: (2, True), 13: (2, True),
    14: (2, True), 15: (2, True), 16: (3, True), 17: (3, True), 18: (3, False), 19: (3, True),
    20: (3, False), 21: (3, False), 22: (3, True), 23: (4, True), 24: (4, True), 25: (4, True),
    26: (4, True), 27: (4, True), 28: (4, True), 29: (4, True), 30: (4, True), 31: (3, True),
    32: (3, True), 33: (3, True), 34: (3, True), 35: (5, True), 36: (5, False), 37: (5, True),
    38: (5, False), 39: (5, False), 40: (4, True), 41: (4, True), 42: (4, True), 43: (4, True),
}

# family id -> (Table 1 index, data file, parameter defaults, notes)
_TRANSCRIBED = {
    "phi2_51": (2, "phi2_51.pc", {}, ["alpha has order p^5 and alpha^(p^4) = [alpha1, alpha]"]),
    "phi13": (13, "phi13.pc", {}, []),
    "phi15_21^4": (15, "phi15_21-4.pc", {}, ["theta is the smallest primitive root mod p"]),
    "phi18": (18, "phi18.pc", {}, ["pc order a, a1, b, a2, a3, g keeps every tail later"]),
    "phi19": (19, "phi19.pc", {}, []),
    "phi22": (22, "phi22.pc", {}, ["a1^(p) expanded with binomial exponents"]),
    "phi23": (23, "phi23.pc", {}, ["aj^(p) expanded with binomial exponents"]),
    "phi24": (24, "phi24.pc", {}, []),
    "phi25_222": (25, "phi25_222.pc", {}, ["alpha has order p^2; a1^(p) = a3, a2^(p) = a4"]),
    "phi27": (27, "phi27.pc", {}, []),
    "phi30": (30, "phi30.pc", {}, ["generator list typo beta1 normalized to beta"]),
    "phi31": (31, "phi31.pc", {}, []),
    "phi33": (33, "phi33.pc", {}, []),
    "phi34_321a": (34, "phi34_321a.pc", {}, []),
    "phi35": (35, "phi35.pc", {}, ["alpha^(p) read as alpha^p"]),
    "phi37": (37, "phi37.pc", {}, ["[a_i, a] = a_(i+1) only for i = 1, 2, 3"]),
    "phi40": (40, "phi40.pc", {}, []),
    "phi41": (41, "phi41.pc", {}, ["v is the smallest quadratic nonresidue mod p"]),
    "phi42_222": (42, "phi42_222.pc", {"r": 0}, ["subscript a_0 exposed as parameter r, default 0",
                                               "fractional exponents use the inverse of 2 mod p"]),
    "phi43_222": (43, "phi43_222.pc", {"r": 0}, ["(k, l) lexicographically least solution",
                                               "n = v + C(p, 3)"]),
}

_ALIASES = {
    "phi15_21-4": "phi15_21^4",
    "phi2": "phi2_51",
    "phi25": "phi25_222",
    "phi34": "phi34_321a",
    "phi42": "phi42_222",
    "phi43": "phi43_222",
    "phi15": "phi15_21^4",
}


@dataclass(frozen=True)
class FamilyEntry:
    family_id: str
    index: int
    nilpotency_class: int
    expected: str                     # Trivial | Nontrivial | NotTranscribed
    table1_verdict: str               # Trivial | Nontrivial, as printed
    params: dict = field(default_factory=dict)
    source_file: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def transcribed(self) -> bool:
        return self.source_file is not None


def _entry(fid: str) -> FamilyEntry:
    idx, fname, params, notes = _TRANSCRIBED[fid]
    cls, vanishes = _TABLE1[idx]
    verdict = "Trivial" if vanishes else "Nontrivial"
    return FamilyEntry(fid, idx, cls, verdict, verdict, dict(params), fname, tuple(notes))


def list_families(include_untranscribed: bool = True) -> list[FamilyEntry]:
    """Catalog order: transcribed families by index, then the rest of Table 1."""
    out = sorted((_entry(f) for f in _TRANSCRIBED), key=lambda e: e.index)
    if include_untranscribed:
        done = {e.index for e in out}
        for idx, (cls, vanishes) in sorted(_TABLE1.items()):
            if idx not in done:
                out.append(FamilyEntry(f"phi{idx}", idx, cls, "NotTranscribed",
                                       "Trivial" if vanishes else "Nontrivial"))
    return out


def _resolve(family_id: str) -> str:
    fid = family_id.strip().lower()
    fid = _ALIASES.get(fid, fid)
    if fid.endswith("_1^6"):
        fid = fid[:-4]
    if fid in _TRANSCRIBED:
        return fid
    base = fid.split("_")[0]
    if base.startswith("phi") and base[3:].isdigit() and int(base[3:]) in _TABLE1:
        raise PresentationError(
            f"family {family_id!r} is in Table 1 but its presentation is not transcribed here; "
            "supply it as a DSL file (see `b0kit group --file`)")
    raise PresentationError(f"unknown family {family_id!r}; `b0kit list` shows the catalog, "
                            "other groups can be given as DSL files")


def get_family(family_id: str) -> FamilyEntry:
    return _entry(_resolve(family_id))


def family_source(family_id: str) -> str:
    fid = _resolve(family_id)
    return resources.files(__package__).joinpath("data", _TRANSCRIBED[fid][1]).read_text()


def family_presentation(family_id: str, p: int, params: dict | None = None,
                        check: bool = True) -> PcPresentation:
    """Instantiate a transcribed family at the prime p.

    p = 3 is accepted for small-scale experiments with a warning, since the
    families are only claimed for p > 3.
    """
    fid = _resolve(family_id)
    if not is_prime(p):
        raise PresentationError(f"{p} is not prime")
    if p == 2:
        raise PreconditionError("the catalog needs an odd prime")
    entry = _entry(fid)
    notes = list(entry.notes)
    if p == 3:
        msg = f"{fid} at p=3: the classification assumes p > 3"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    values = dict(entry.params)
    values.update(params or {})
    if fid == "phi43_222":
        if p <= 3:
            raise PreconditionError("phi43_222 needs p > 3 to choose k and l")
        k, l, n = phi43_kl(p, int(values.get("r", 0)))
        values.update(k=k, l=l, n=n)
    pres = parse_presentation(family_source(fid), p=p, params=values, name=fid)
    pres.notes = tuple(notes)
    if check:
        bad = check_consistency(pres)
        if bad:
            raise InconsistentPresentation(bad)
    return pres

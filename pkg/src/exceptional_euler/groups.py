"""Catalog: generator basis, Cartan labels, sphere dimensions and schedules per group."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import derivations as D
from . import euler as E
from .iwasawa import schedule_g2_split
from .lie import GeneratorBasis
from .roots import SPHERE_DIMS, RootSystem, extract_roots, macdonald_input, macdonald_volume, simple_roots

GROUPS = ("su2", "su3", "g2", "spin9", "f4", "e6", "g2_split")
SCHEDULE_KINDS = ("euler_su3", "euler_so4", "iwasawa", "default")


@dataclass(frozen=True)
class GroupSpec:
    name: str
    basis: Callable[[], GeneratorBasis]
    cartan_labels: tuple
    sphere_dims: tuple | None
    schedules: dict = field(default_factory=dict)  # kind -> schedule factory
    compact: bool = True

    def schedule(self, kind: str = "default") -> E.EulerSchedule:
        if kind not in self.schedules:
            raise KeyError(f"{self.name} has no '{kind}' schedule; choose from {sorted(self.schedules)}")
        return self.schedules[kind]()


def _su3_basis() -> GeneratorBasis:
    return D.g2_golden().subset(range(1, 9), "su3")


def _spin9_basis() -> GeneratorBasis:
    return D.f4_generators().subset(D.SPIN9_LABELS, "spin9")


CATALOG = {
    "su2": GroupSpec("su2", E._su2_basis, (3,), SPHERE_DIMS["su2"], {"default": E.schedule_su2}),
    "su3": GroupSpec("su3", _su3_basis, (3, 8), SPHERE_DIMS["su3"], {"default": E.schedule_su3}),
    "g2": GroupSpec("g2", D.g2_golden, (5, 11), SPHERE_DIMS["g2"], {
        "default": E.schedule_g2_so4, "euler_so4": E.schedule_g2_so4, "euler_su3": E.schedule_g2_su3}),
    "spin9": GroupSpec("spin9", _spin9_basis, (1, 6, 15, 36), SPHERE_DIMS["spin9"], {"default": E.schedule_spin9}),
    "f4": GroupSpec("f4", D.f4_generators, (1, 6, 15, 36), SPHERE_DIMS["f4"], {"default": E.schedule_f4}),
    "e6": GroupSpec("e6", D.e6_generators, (1, 6, 15, 36, 53, 70), SPHERE_DIMS["e6"], {"default": E.schedule_e6}),
    # (H1, H2) = (Q11, Q5) so the extracted roots read in the printed frame
    "g2_split": GroupSpec("g2_split", D.split_g2_generators, (11, 5), None, {
        "default": schedule_g2_split, "euler_so4": schedule_g2_split}, compact=False),
}


def group(name: str) -> GroupSpec:
    if name not in CATALOG:
        raise KeyError(f"unknown group '{name}'; choose from {', '.join(GROUPS)}")
    return CATALOG[name]


@lru_cache(maxsize=None)
def root_system(name: str) -> RootSystem:
    spec = group(name)
    return simple_roots(extract_roots(spec.basis(), spec.cartan_labels))


def macdonald(name: str) -> float:
    spec = group(name)
    if spec.sphere_dims is None:
        raise ValueError(f"{name} is noncompact; Macdonald's formula does not apply")
    return macdonald_volume(macdonald_input(root_system(name), spec.sphere_dims))

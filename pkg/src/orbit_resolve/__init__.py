"""Machine checks for symplectic resolutions of classical nilpotent orbit closures."""

from .partitions import FlagType, LieTypeRank, OrbitLabel, Partition, dual_partition, enumerate_orbits, orbit_dimension
from .polarizations import LeviClass, PolarizationClass, TheoremReport, resolution_polarizations, verify_theorem

__all__ = [
    "FlagType",
    "LieTypeRank",
    "OrbitLabel",
    "Partition",
    "dual_partition",
    "enumerate_orbits",
    "orbit_dimension",
    "LeviClass",
    "PolarizationClass",
    "TheoremReport",
    "resolution_polarizations",
    "verify_theorem",
]

"""Everything needed to study one level, built lazily and cached."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import cached_property

from .algebra import LocalAlgebra, SignAssignment, default_signs, full_view, truncate_A
from .linalg import Field, make_field
from .quiver import Geometry, build_quiver, classify_vertices, find_periodic_line_candidates
from .tiling import generate_patch, padded_patch

# vertices of P_i must sit this deep inside the padded window so that every
# projective e_zA with z at most two steps outside P_i is computed faithfully
WINDOW_RADIUS = 6
DEFAULT_WINDOW_PADDING = 12


@dataclass
class RunConfig:
    level: int = 6
    field: str = "prime"
    prime: int = 5
    padding: int = DEFAULT_WINDOW_PADDING
    signs: str = "parity"
    seed: int = 20240611

    def make_field(self) -> Field:
        return make_field(self.field, self.prime)

    def to_dict(self):
        return {"level": self.level, "field": self.field, "prime": self.prime,
                "padding": self.padding, "signs": self.signs, "seed": self.seed}


@dataclass
class LevelContext:
    """Patch, quiver, padded window, local algebra and truncations for ``P_i``."""

    level: int
    field: Field = dataclasses.field(default_factory=make_field)
    signs: SignAssignment = dataclasses.field(default_factory=default_signs)
    padding: int = DEFAULT_WINDOW_PADDING
    radius: int = WINDOW_RADIUS

    @classmethod
    def from_config(cls, cfg: RunConfig, level: int | None = None) -> "LevelContext":
        return cls(cfg.level if level is None else level, cfg.make_field(),
                   default_signs(scheme=cfg.signs), cfg.padding)

    @cached_property
    def patch(self):
        return generate_patch(self.level)

    @cached_property
    def window(self):
        big, _ = padded_patch(self.level, self.padding, radius=self.radius)
        return big

    @cached_property
    def geometry(self) -> Geometry:
        return Geometry(self.window)

    @cached_property
    def quiver(self):
        return build_quiver(self.patch)

    @cached_property
    def classes(self) -> dict:
        return classify_vertices(self.quiver, self.window)

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(self.patch.vertices())

    @cached_property
    def algebra(self) -> LocalAlgebra:
        return LocalAlgebra(self.geometry, self.signs, self.field)

    @cached_property
    def ring(self):
        """The truncation ``A_i``."""
        return truncate_A(self.algebra, self.vertices)

    @cached_property
    def full(self):
        """The whole window as a ring (faithful to ``A`` near ``P_i``)."""
        return full_view(self.algebra)

    @cached_property
    def line_candidates(self):
        return find_periodic_line_candidates(self.quiver, self.classes)

    def interior(self):
        """Vertices of ``P_i`` with complete stars inside ``P_i``."""
        g = self.quiver.geometry
        return [v for v in self.quiver.vertices if g.full(v)]

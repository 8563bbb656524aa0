"""Verified coordinate maps from a small lattice into a larger one."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

from . import linalg
from .errors import Inconsistent, NotIntegral
from .lattice import ClassLike, Coords, EmbeddedClass, Lattice, Sublattice, coords_of


@dataclass(frozen=True)
class LatticeEmbedding:
    """Images of the basis of ``source`` in ``target``; Gram preservation is checked."""

    source: Lattice
    target: Lattice
    images: Tuple[Coords, ...]
    primitive: bool = field(init=False)

    def __post_init__(self):
        imgs = tuple(coords_of(self.target, c) for c in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.rank:
            raise Inconsistent("need one image per source basis vector")
        for i in range(len(imgs)):
            for j in range(len(imgs)):
                if self.target.pair(imgs[i], imgs[j]) != self.source.gram[i][j]:
                    raise Inconsistent(f"Gram entry ({i}, {j}) is not preserved")
        object.__setattr__(self, "primitive", Sublattice(self.target, imgs).saturated)

    def image(self, v: ClassLike) -> EmbeddedClass:
        c = coords_of(self.source, v)
        n = self.target.rank
        out = [0] * n
        for a, img in zip(c, self.images):
            if a:
                for k in range(n):
                    out[k] += a * img[k]
        return EmbeddedClass(self.target, tuple(out))

    def image_rational(self, v: Sequence) -> tuple:
        return tuple(linalg.vecmat(tuple(v), self.images))

    def preimage(self, w: ClassLike) -> EmbeddedClass:
        """Source coordinates of a target class lying in the image."""
        x = linalg.solve_rational(linalg.transpose(self.images), coords_of(self.target, w))
        if x is None or any(t.denominator != 1 for t in x):
            raise NotIntegral("class is not in the image of the embedding")
        return EmbeddedClass(self.source, tuple(int(t) for t in x))

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.label,
                "images": [list(c) for c in self.images], "primitive": self.primitive}

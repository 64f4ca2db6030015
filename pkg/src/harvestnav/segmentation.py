"""Crop-pixel classification in cylindrical HSV.

A pixel is a ripe-crop candidate when its hue falls inside the directed
wedge between two half-planes (phi1 -> phi2, inclusive ends, wrap-aware) and
it lies on the bright side of the saturation/value plane
``plane_a * S + V >= plane_b``. Dark or washed-out pixels fail the plane even
when their hue matches, which is what separates sunlit soil from ripe crop.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .imagecore import BinaryMask, HsvPixel, RgbImage


@dataclass(frozen=True)
class SegmentationParams:
    """Cut-plane parameters. Angles in degrees; the wedge runs from phi1 to
    phi2 going clockwise through increasing hue, wrapping at 360."""

    phi1_deg: float = 35.0
    phi2_deg: float = 75.0
    plane_a: float = 0.5
    plane_b: float = 0.7

    def __post_init__(self):
        for name in ("phi1_deg", "phi2_deg", "plane_a", "plane_b"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or v != v or v in (float("inf"), float("-inf")):
                raise ValueError(f"{name} must be a finite number")
        if self.plane_a < 0:
            raise ValueError("plane_a must be >= 0")


def wedge_angle(params: SegmentationParams) -> float:
    """Hue span of the wedge in degrees, in (0, 360]; equal planes mean the
    full circle (hue unconstrained)."""
    width = (params.phi2_deg - params.phi1_deg) % 360.0
    return 360.0 if width == 0.0 else width


def hue_in_wedge(hue_deg: float, params: SegmentationParams) -> bool:
    width = wedge_angle(params)
    dist = (hue_deg - params.phi1_deg) % 360.0
    return dist <= width


def classify_pixel(p: HsvPixel, params: SegmentationParams) -> bool:
    """True iff hue is inside the wedge and a*S + V clears plane_b."""
    return hue_in_wedge(p.hue, params) and (
        params.plane_a * p.saturation + p.value >= params.plane_b
    )


def segment_image(img: RgbImage, params: SegmentationParams) -> BinaryMask:
    """Per-pixel crop classification of a whole image."""
    bits = kernels.segment_rgb(
        img.pixels, params.phi1_deg, params.phi2_deg, params.plane_a, params.plane_b
    )
    return BinaryMask(bits)

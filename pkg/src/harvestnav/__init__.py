"""harvestnav: vision-guided wheat-harvest perception and navigation.

Pipeline: HSV cut-plane color segmentation -> near-vertical stalk
extraction -> centroid steering and apparent-height end-of-field detection,
validated in a closed-loop synthetic-field simulator, with an HTTP tuning
service for in-session parameter adjustment.
"""

from .imagecore import BinaryMask, HsvPixel, RgbImage, load_image, rgb_to_hsv, save_mask_overlay
from .segmentation import SegmentationParams, classify_pixel, segment_image, wedge_angle
from .stalks import (
    DetectionParams,
    StalkSegment,
    detect_vertical_segments,
    filter_residual,
    stalk_mask,
)
from .perception import (
    EofParams,
    PerceptionFrame,
    analyze_frame,
    crop_centroid,
    detect_end_of_field,
    pinhole_image_height,
    top_height_profile,
)
from .navigation import (
    GeoFence,
    NavMode,
    NavParams,
    NavState,
    SteeringCommand,
    inside_fence,
    nav_step,
    steering_from_centroid,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMask",
    "HsvPixel",
    "RgbImage",
    "load_image",
    "rgb_to_hsv",
    "save_mask_overlay",
    "SegmentationParams",
    "classify_pixel",
    "segment_image",
    "wedge_angle",
    "DetectionParams",
    "StalkSegment",
    "detect_vertical_segments",
    "filter_residual",
    "stalk_mask",
    "EofParams",
    "PerceptionFrame",
    "analyze_frame",
    "crop_centroid",
    "detect_end_of_field",
    "pinhole_image_height",
    "top_height_profile",
    "GeoFence",
    "NavMode",
    "NavParams",
    "NavState",
    "SteeringCommand",
    "inside_fence",
    "nav_step",
    "steering_from_centroid",
    "__version__",
]

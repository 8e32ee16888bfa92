"""Mammographic image screening pipeline.

Reads PGM images, regularizes their appearance, extracts statistical
moment features from wavelet subbands and the Fourier log-magnitude
spectrum, classifies images as normal or suspicious with a Gaussian naive
Bayes model, and evaluates the result with sensitivity, specificity and
ROC/AUC. A deterministic phantom generator provides labeled desk-scale
data. See the ``mammoscope`` CLI for batch use.
"""

from .errors import MammoscopeError
from .features import NORMAL, SUSPICIOUS, FeatureConfig, FeatureTable, FeatureVector
from .imgio import GrayImage, RawImage, read_pgm, to_gray, write_pgm
from .preprocess import PreprocessConfig, preprocess_pipeline

__version__ = "0.1.0"

__all__ = [
    "MammoscopeError",
    "NORMAL",
    "SUSPICIOUS",
    "FeatureConfig",
    "FeatureTable",
    "FeatureVector",
    "GrayImage",
    "RawImage",
    "read_pgm",
    "to_gray",
    "write_pgm",
    "PreprocessConfig",
    "preprocess_pipeline",
    "__version__",
]

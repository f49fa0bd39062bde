"""Network-based fake news detection from diffusion patterns on a follow graph."""

from .corpus import (CorpusError, CorpusStats, EngagementTable, SocialGraph,
                     corpus_stats, load_corpus, save_corpus)
from .diffusion import DiffusionNetwork, build_all_networks, build_network, subsample
from .features import (FeatureExtractor, FeatureMatrix, FeatureVector,
                       FEATURE_REGISTRY, PATTERNS, extract, extract_matrix,
                       pattern_mask)
from .susceptibility import SusceptibilityModel
from .susceptibility import fit as fit_susceptibility

__version__ = "0.1.0"

__all__ = [
    "CorpusError",
    "CorpusStats",
    "DiffusionNetwork",
    "EngagementTable",
    "FEATURE_REGISTRY",
    "FeatureExtractor",
    "FeatureMatrix",
    "FeatureVector",
    "PATTERNS",
    "SocialGraph",
    "SusceptibilityModel",
    "build_all_networks",
    "build_network",
    "corpus_stats",
    "extract",
    "extract_matrix",
    "fit_susceptibility",
    "load_corpus",
    "pattern_mask",
    "save_corpus",
    "subsample",
]

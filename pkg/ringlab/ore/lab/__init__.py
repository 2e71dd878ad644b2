"""Theorem lab - lemma sweeps, idempotent witnesses and the theorem harness"""

from .lemmas import lemma_compat_f, lemma_rigid_equivalence, lemma_stability
from .proposition import (
    build_pq_baer_witness,
    converse_extraction,
    ore_ann_idempotent_bounded,
    ore_idempotents_bounded,
    ore_pq_baer_bounded,
)
from .roundtrip import theorem_roundtrip

__all__ = [
    "lemma_compat_f",
    "lemma_rigid_equivalence",
    "lemma_stability",
    "build_pq_baer_witness",
    "converse_extraction",
    "ore_ann_idempotent_bounded",
    "ore_idempotents_bounded",
    "ore_pq_baer_bounded",
    "theorem_roundtrip",
]

"""Füredi graphs G(q, t), exhaustive K_{a,b}-freeness certificates and lemma oracles."""

from .errors import TuranError
from .field import FieldElement, FieldSpec, Subgroup, make_field, norm, subgroup
from .graph import FurediGraph, build_graph, count_edges, furedi_graph
from .verify import FreenessCertificate, LemmaReport, certify_kab_free, theorem_suite

__all__ = [
    "FieldElement", "FieldSpec", "FreenessCertificate", "FurediGraph", "LemmaReport",
    "Subgroup", "TuranError", "build_graph", "certify_kab_free", "count_edges",
    "furedi_graph", "make_field", "norm", "subgroup", "theorem_suite",
]

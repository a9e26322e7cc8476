"""Computational engine for the derived 2-operad ``seq`` and its action on
cosimplicial hom-complexes of small dg-categories."""

__version__ = "0.1.0"

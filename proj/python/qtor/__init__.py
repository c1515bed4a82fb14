"""Exact arithmetic for quadratic functions on torsion groups.

Thin wrappers over the native module: inputs and outputs are plain dicts
mirroring the JSON documents of the command line tool, with integers as
Python ints and rationals as "p/q" strings.
"""

import json

from ._qtor import InvalidInput, SizeLimitError
from . import _qtor

__all__ = [
    "InvalidInput",
    "SizeLimitError",
    "lattice",
    "discriminant",
    "gauss",
    "invariants",
    "isomorphic",
    "stable_equivalent",
    "solve_char",
    "refinements",
]


def lattice(gram, char=None):
    """Lattice document from a symmetric integer matrix and an optional
    characteristic form."""
    doc = {"gram": [[int(v) for v in row] for row in gram]}
    if char is not None:
        doc["char"] = [int(v) for v in char]
    return doc


def discriminant(lattice):
    """Discriminant function of a lattice document."""
    return json.loads(_qtor.discriminant(json.dumps(lattice)))


def gauss(quad, max_group_order=512):
    """Exact Gauss sum of a quadratic function document."""
    return json.loads(_qtor.gauss(json.dumps(quad), max_group_order))


def invariants(quad, max_group_order=512):
    """Classifying data of a quadratic function document."""
    return json.loads(_qtor.invariants(json.dumps(quad), max_group_order))


def isomorphic(a, b, witness=False, max_group_order=512):
    """Isomorphism decision between two quadratic function documents."""
    return json.loads(_qtor.isomorphic(json.dumps(a), json.dumps(b), witness, max_group_order))


def stable_equivalent(a, b, max_group_order=512):
    """Stable equivalence certificate for two lattice documents."""
    return json.loads(_qtor.stable_equivalent(json.dumps(a), json.dumps(b), max_group_order))


def solve_char(lattice, quad):
    """Characteristic form on the lattice inducing the given function, if any."""
    return json.loads(_qtor.solve_char(json.dumps(lattice), json.dumps(quad)))


def refinements(pairing, max_group_order=512):
    """All quadratic refinements of the pairing in a document."""
    return json.loads(_qtor.refinements(json.dumps(pairing), max_group_order))

"""Exact spectral coefficients for reductive groups and finite packet models."""

import json

from . import _core
from ._core import LtsError, catalog_groups, catalog_models, packet_checks, run_cli, transfer_factor

__all__ = [
    "LtsError",
    "cartan_type",
    "catalog_groups",
    "catalog_models",
    "elliptic_classes",
    "i_number",
    "i_phi",
    "packet_checks",
    "run_cli",
    "sigma",
    "stabilization_fixture",
    "transfer_factor",
    "verify_ei",
]


def _encode(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def cartan_type(group):
    return _core.cartan_type(_encode(group))


def i_number(group):
    return _core.i_number(_encode(group))


def sigma(group):
    return _core.sigma(_encode(group))


def elliptic_classes(group):
    return _core.elliptic_classes(_encode(group))


def verify_ei(group):
    return _core.verify_ei(_encode(group))


def i_phi(model, x):
    return _core.i_phi(_encode(model), x)


def stabilization_fixture(models):
    return _core.stabilization_fixture(_encode(models))

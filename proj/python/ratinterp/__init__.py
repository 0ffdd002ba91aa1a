"""Exact interpolation of sparse rational functions from black-box values."""

from ._core import (
    Error,
    canonical,
    evaluate,
    mrfunsi1,
    mrfunsi2,
    random_instance,
    upoly_decode,
    urfunsi1,
    urfunsi2,
    urfunsip,
)

__all__ = [
    "Error",
    "canonical",
    "evaluate",
    "mrfunsi1",
    "mrfunsi2",
    "random_instance",
    "upoly_decode",
    "urfunsi1",
    "urfunsi2",
    "urfunsip",
]

"""
Base model functionality for flattop-ris value types.

This module provides the base model class with the shared configuration
and the array coercion helpers used by all models that carry vectors or
matrices.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Annotated, Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, BeforeValidator, ConfigDict


def _readonly(array: NDArray[Any]) -> NDArray[Any]:
    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


def _to_real_vector(value: Any) -> NDArray[np.float64]:
    array = np.asarray(value, dtype=np.float64)
    if array.ndim != 1:
        raise ValueError(f"expected a 1D vector, got shape {array.shape}")
    return _readonly(array)


def _to_complex_vector(value: Any) -> NDArray[np.complex128]:
    array = np.asarray(value, dtype=np.complex128)
    if array.ndim != 1:
        raise ValueError(f"expected a 1D vector, got shape {array.shape}")
    return _readonly(array)


def _to_real_matrix(value: Any) -> NDArray[np.float64]:
    array = np.asarray(value, dtype=np.float64)
    if array.ndim != 2:
        raise ValueError(f"expected a 2D matrix, got shape {array.shape}")
    return _readonly(array)


def _to_complex_matrix(value: Any) -> NDArray[np.complex128]:
    array = np.asarray(value, dtype=np.complex128)
    if array.ndim != 2:
        raise ValueError(f"expected a 2D matrix, got shape {array.shape}")
    return _readonly(array)


if TYPE_CHECKING:
    RealVector = NDArray[np.float64]
    ComplexVector = NDArray[np.complex128]
    RealMatrix = NDArray[np.float64]
    ComplexMatrix = NDArray[np.complex128]
else:
    RealVector = Annotated[np.ndarray, BeforeValidator(_to_real_vector)]
    ComplexVector = Annotated[np.ndarray, BeforeValidator(_to_complex_vector)]
    RealMatrix = Annotated[np.ndarray, BeforeValidator(_to_real_matrix)]
    ComplexMatrix = Annotated[np.ndarray, BeforeValidator(_to_complex_matrix)]


class FlatTopModel(BaseModel):
    """
    Base model for all flattop-ris value types.

    Instances are immutable; array fields are stored as read-only copies.
    """

    model_config = ConfigDict(
        # Value types never change after construction
        frozen=True,
        # Unknown keys are configuration mistakes
        extra="forbid",
        # numpy arrays as field types
        arbitrary_types_allowed=True,
        populate_by_name=True,
        use_enum_values=False,
    )

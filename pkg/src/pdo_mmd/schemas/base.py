"""Base schema class and shared field types."""

from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator


class SchemaBase(BaseModel):
    """Base class for all Pydantic schemas read from or written to disk.

    Unknown keys are rejected so that a typo in a config or symbol file is
    reported instead of silently ignored.
    """

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        str_strip_whitespace=True,
    )


def _parse_complex(value: Any) -> complex:
    """Accept a number, a ``[re, im]`` pair or a string such as ``"1-2j"``."""
    if isinstance(value, bool):
        raise ValueError("boolean is not a complex number")
    if isinstance(value, complex | int | float):
        return complex(value)
    if isinstance(value, list | tuple) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    raise ValueError(f"cannot interpret {value!r} as a complex number")


def _dump_complex(value: complex) -> list[float]:
    return [value.real, value.imag]


ComplexValue = Annotated[
    complex,
    PlainValidator(_parse_complex),
    PlainSerializer(_dump_complex, return_type=list[float]),
]
"""Complex number field, serialized as ``[re, im]``."""

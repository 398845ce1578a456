"""Text formats and serialization."""

from .formatting import format_element, format_terms
from .parser import ParseError, parse_expression
from .serialization import (
    SerializationError,
    deserialize,
    deserialize_algebra,
    serialize,
    serialize_algebra,
)

__all__ = [
    "format_element",
    "format_terms",
    "ParseError",
    "parse_expression",
    "SerializationError",
    "serialize",
    "deserialize",
    "serialize_algebra",
    "deserialize_algebra",
]

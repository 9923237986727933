"""Time rules relating consecutive discrete diffeomorphisms q_k, q_{k+1}."""

import enum


class TimeRule(str, enum.Enum):
    """How the velocity matrix U_k is read off the pair (q_k, q_{k+1})."""

    EXPLICIT = "explicit"
    IMPLICIT = "implicit"
    MIDPOINT = "midpoint"
    AVERAGE = "average"


class SchemeKind(str, enum.Enum):
    """Update rules supported by the integrator.

    The midpoint rule is deliberately absent: its discrete equations are
    cubic in the velocity.
    """

    EXPLICIT = "explicit"
    IMPLICIT = "implicit"
    AVERAGE = "average"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        name = str(value).strip().lower()
        if name == "midpoint":
            raise ValueError(
                "scheme 'midpoint' is not supported: its update is cubic in U"
            )
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scheme {value!r}; expected one of {choices}")

"""One session = one field and one 3-fold Pfister form n with its base algebras.

Algebras, matrices and verdicts are exchanged as JSON with every scalar
written as a string ("3", "-1/2"), so files are exact and diffable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .compalg import Algebra, CompositionAlgebra, cayley_dickson, pushforward, zorn
from .errors import FieldMismatch
from .exactcore import Field, parse_field
from .quadform import QuadraticForm, isometry_between, pfister3
from .triality import TrialityBase


class Session(TrialityBase):
    def __init__(self, field: Field | str = "fp:3", params=(1, 1, 1), seed: int = 0):
        if isinstance(field, str):
            field = parse_field(field)
        super().__init__(field, params)
        self.seed = seed

    def describe(self) -> dict:
        return {"field": self.field.name, "pfister": [self.field.to_str(p) for p in self.params],
                "seed": self.seed}

    def rng(self, *key: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, *key]))

    def check_form(self, alg: Algebra) -> None:
        if alg.field != self.field:
            raise FieldMismatch(f"algebra over {alg.field.name}, session over {self.field.name}")
        if alg.form != self.form:
            raise FieldMismatch("algebra does not live on the session form")

    def cayley_dickson(self, params=None) -> CompositionAlgebra:
        return cayley_dickson(self.field, *(params or self.params))

    def zorn(self) -> CompositionAlgebra:
        """Zorn's vector-matrix algebra carried onto the session form."""
        z = zorn(self.field)
        g = isometry_between(z.form, self.form)
        moved = pushforward(z, g)
        out = CompositionAlgebra.certify(Algebra(self.form, moved.gamma, {"kind": "zorn"}))
        return out

    def load_algebra(self, data: dict) -> CompositionAlgebra:
        alg = Algebra.from_json(data, self.field)
        self.check_form(alg)
        return CompositionAlgebra.certify(alg)

    def load_matrix(self, data) -> np.ndarray:
        if isinstance(data, dict):
            data = data["matrix"]
        mat = self.field.deserialize(data)
        if mat.shape != (8, 8):
            raise ValueError(f"expected an 8x8 matrix, got shape {mat.shape}")
        return mat


def session_for(data: dict, field: str | None = None, params=None, seed: int = 0) -> Session:
    """A session matching an algebra file: its field, and its Pfister params if recorded."""
    spec = data.get("field", field)
    if field is not None and spec != field:
        raise FieldMismatch(f"file is over {spec}, --field says {field}")
    form = data.get("form", {})
    if form.get("kind") == "pfister3":
        params = form["params"]
    return Session(spec, params or (1, 1, 1), seed)


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def form_of(field: Field, data: dict) -> QuadraticForm:
    return QuadraticForm.from_json(field, data)


__all__ = ["Session", "session_for", "read_json", "dumps", "form_of", "pfister3"]

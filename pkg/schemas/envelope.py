from typing import Literal

from pydantic import BaseModel, ConfigDict, confloat


class PerturbationEnvelope(BaseModel):
    """
    Uniform envelope g(t) bounding how far each coordinate's separation decay
    deviates from a pure exponential: |log(sep_i(t))/t + λ_i| <= g(t).

    Two kinds are supported, both bounded, continuous and O(1/t):
        zero            g(t) = 0
        rational_decay  g(t) = amplitude / (1 + t)

    Attributes:
        kind (str): "zero" or "rational_decay".
        amplitude (float): a >= 0, used by rational_decay only.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["zero", "rational_decay"] = "zero"
    amplitude: confloat(ge=0, allow_inf_nan=False) = 0.0

    def __call__(self, t: float) -> float:
        if self.kind == "zero":
            return 0.0
        return self.amplitude / (1.0 + t)


ZERO_ENVELOPE = PerturbationEnvelope()

"""
src/pipeline/scenario.py

Turns a JSON scenario into a validated Scenario and builds the model and
initial state it describes.

Validation happens in two passes: the document is checked against
schemas/scenario.schema.json (shape, types, ranges, enum values), then the
action-specific rules run (a curve for the Lax-based models, distinct
marks, a J that fits the reality class).  Every failure is a
ValidationError whose field names the offending path, e.g. "curve.tau_im".

Usage:
    from src.pipeline.scenario import parse_scenario
    s = parse_scenario(Path("run.json").read_bytes())
"""

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from jsonschema import Draft202012Validator

from src.config import DEFAULT_SEED, OUTPUT_DIR
from src.core.phase_space import PhasePoint, RealityClass, reality_involution
from src.errors import ValidationError
from src.flow.integrator import IntegratorOptions
from src.flow.sampling import sample_cm_start, sample_onshell
from src.models.base import DynamicalModel
from src.models.calogero import CMModel, CMState, CMVariant
from src.models.gaudin import MARK_TOL, GaudinHamiltonian, GaudinModel, GaudinState, _check_marks
from src.models.top import TopModel, TopParams
from src.tools.elliptic import EllipticCurve

SCHEMA_DIR = Path(__file__).resolve().parent.parent.parent / "schemas"

ACTIONS = ("simulate", "dims", "check", "spectrum")
MODELS = ("top", "cm", "gaudin")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    with open(SCHEMA_DIR / f"{name}.schema.json") as f:
        return json.load(f)


def _path(error) -> str:
    parts = [str(p) for p in error.absolute_path]
    return ".".join(parts) if parts else "$"


def _complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(value[0], value[1])
    return complex(value)


def _triple(values) -> list[complex]:
    return [_complex(v) for v in values]


# ── Scenario ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Scenario:
    action: str
    model: str | None = None
    curve: EllipticCurve | None = None
    cls: RealityClass = RealityClass.COMPLEX_V
    params: dict = field(default_factory=dict)
    initial: str | dict = "random"
    integrator: IntegratorOptions = field(default_factory=IntegratorOptions)
    seed: int = DEFAULT_SEED
    only: tuple[str, ...] = ()
    output_dir: str = OUTPUT_DIR
    prefix: str = "run"

    def to_dict(self) -> dict:
        return {
            "action": self.action,
            "model": self.model,
            "curve": self.curve.to_dict() if self.curve is not None else None,
            "class": self.cls.value,
            "params": self.params,
            "initial": self.initial,
            "integrator": self.integrator.to_dict(),
            "seed": self.seed,
            "only": list(self.only),
            "outputs": {"dir": self.output_dir, "prefix": self.prefix},
        }


def parse_scenario(text: bytes | str) -> Scenario:
    """
    Parse and validate a scenario document, applying every default.

    SPINHIGGS_SEED in the environment overrides the document's seed.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ValidationError(f"scenario is not UTF-8: {e}", field="$") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"scenario is not valid JSON: {e.msg} (line {e.lineno})", field="$") from e

    validator = Draft202012Validator(load_schema("scenario"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        first = errors[0]
        raise ValidationError(first.message, field=_path(first))

    action = doc["action"]
    model = doc.get("model")
    if action == "simulate" and model is None:
        raise ValidationError("simulate needs a model", field="model")

    curve = None
    if "curve" in doc:
        c = doc["curve"]
        curve = EllipticCurve(
            complex(c.get("tau_re", 0.0), c["tau_im"]),
            **{k: c[k] for k in ("trunc_tol", "max_terms") if k in c},
        )

    env_seed = os.getenv("SPINHIGGS_SEED")
    seed = int(env_seed) if env_seed else int(doc.get("seed", DEFAULT_SEED))

    outputs = doc.get("outputs", {})
    scenario = Scenario(
        action=action,
        model=model,
        curve=curve,
        cls=RealityClass(doc.get("class", RealityClass.COMPLEX_V.value)),
        params=doc.get("params", {}),
        initial=doc.get("initial", "random"),
        integrator=IntegratorOptions(**doc.get("integrator", {})),
        seed=seed,
        only=tuple(doc.get("only", ())),
        output_dir=outputs.get("dir", OUTPUT_DIR),
        prefix=outputs.get("prefix", action),
    )
    _check_action_fields(scenario)
    return scenario


def _check_action_fields(s: Scenario) -> None:
    params = s.params
    if s.model == "gaudin" or "marks" in params:
        if "marks" not in params and s.action == "simulate":
            raise ValidationError("gaudin needs marks", field="params.marks")
        _check_marks([_complex(x) for x in params.get("marks", [])])
    if s.action == "simulate" and s.model == "cm":
        if CMVariant(params.get("variant", "V")) is CMVariant.V and s.curve is None:
            raise ValidationError("variant V needs a curve", field="curve")
    if s.action == "spectrum" and "l" not in params:
        raise ValidationError("spectrum needs l", field="params.l")
    if s.action in ("simulate", "spectrum") and s.model in (None, "top"):
        top_params(s)


# ── Builders ──────────────────────────────────────────────────────────────────

def top_params(s: Scenario) -> TopParams:
    """
    J from the scenario: an explicit triple, "curve" (half-period values in
    order) or "lax" (the inertia whose energy sits in tr L²).  Without J a
    curve gives "lax" and no curve is an error.
    """
    J = s.params.get("J", "lax" if s.curve is not None else None)
    if J is None:
        raise ValidationError("top needs J or a curve", field="params.J")
    if isinstance(J, str):
        if s.curve is None:
            raise ValidationError(f'J = "{J}" needs a curve', field="params.J")
        params = TopParams.from_curve(s.curve) if J == "curve" else TopParams.for_lax(s.curve)
    else:
        params = TopParams(*_triple(J))
    if s.cls is not RealityClass.COMPLEX_V and not np.allclose(params.as_array().imag, 0):
        raise ValidationError(f"{s.cls.value} flows need real J", field="params.J")
    if s.cls is not RealityClass.COMPLEX_V:
        params = TopParams(*params.as_array().real)
    return params


def build_model(s: Scenario) -> DynamicalModel:
    if s.model == "top":
        params = top_params(s)
        return TopModel(TopParams(*params.as_array()), curve=s.curve, cls=s.cls)
    if s.model == "cm":
        return CMModel(s.curve, CMVariant(s.params.get("variant", "V")), cls=s.cls)
    if s.model == "gaudin":
        marks = [_complex(x) for x in s.params["marks"]]
        return GaudinModel(marks, site=s.params.get("site", 0),
                           which=GaudinHamiltonian(s.params.get("hamiltonian", "H1")), cls=s.cls)
    raise ValidationError(f"unknown model {s.model!r}", field="model")


def _initial_seed(s: Scenario) -> int:
    initial = s.initial
    if isinstance(initial, str) and ":" in initial:
        return int(initial.split(":", 1)[1])
    return s.seed


def _gaudin_random_sites(rng: np.random.Generator, marks, cls: RealityClass) -> list[PhasePoint]:
    """A conjugate mark pair gets (site, ι(site)) for the real classes."""
    sites: list[PhasePoint] = []
    a = 0
    while a < len(marks):
        site = sample_onshell(rng, cls)
        sites.append(site)
        pairs = (cls is not RealityClass.COMPLEX_V and abs(marks[a].imag) > MARK_TOL
                 and a + 1 < len(marks) and abs(marks[a + 1] - np.conj(marks[a])) <= MARK_TOL)
        if pairs:
            sites.append(reality_involution(site))
            a += 1
        a += 1
    return sites


def initial_state(s: Scenario, model: DynamicalModel):
    """The scenario's start, explicit or drawn from "random[:<seed>]"."""
    if isinstance(s.initial, dict):
        return _explicit_state(s, model)

    rng = np.random.default_rng(_initial_seed(s))
    if s.model == "top":
        return sample_onshell(rng, s.cls)
    if s.model == "cm":
        return sample_cm_start(rng, model.variant, s.cls)
    marks = model.marks
    return GaudinState(tuple(_gaudin_random_sites(rng, marks, s.cls)), marks, s.cls)


def _explicit_state(s: Scenario, model: DynamicalModel):
    init = s.initial

    def point(entry, where):
        if "p" not in entry or "q" not in entry:
            raise ValidationError("a site needs p and q", field=where)
        return PhasePoint.from_pq(_triple(entry["p"]), _triple(entry["q"]), s.cls)

    if s.model == "top":
        return point(init, "initial")
    if s.model == "cm":
        if "v" not in init or "u" not in init:
            raise ValidationError("a CM start needs v and u", field="initial")
        return CMState(_complex(init["v"]), _complex(init["u"]), point(init, "initial"))
    if "sites" not in init:
        raise ValidationError("a Gaudin start needs sites", field="initial.sites")
    sites = tuple(point(entry, f"initial.sites.{k}") for k, entry in enumerate(init["sites"]))
    return GaudinState(sites, model.marks, s.cls)

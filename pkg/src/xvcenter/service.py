"""HTTP/JSON facade over the computation pipelines, consumed by the
explorer UI.

Stateless: every response is a pure function of the request body.  Heavy
diagonalizations are cached in-process behind a content hash so slider
interactions stay responsive.  Responses never contain NaN or Inf; such
values are nulled and flagged.  Schema violations return 400, physical
validation failures 422.
"""

import math
import os
import threading
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import elasticity as el
from .hamiltonian import SPECIES, bundled_data, load_params
from .optics import boltzmann_populations, dipole_matrices, pl_ple_spectrum
from .scubed import ScubedRequest, run_scubed
from .solver import solve_manifold


class ScubedBody(BaseModel):
    zpl_nm: float = Field(gt=0)
    ground_splitting_ghz: float = Field(gt=0)
    excited_splitting_ghz: float = Field(gt=0)
    stress_gpa: float = 0.0
    stress_direction: tuple[float, float, float] = (0.0, 0.0, 1.0)
    species: Literal["SiV", "GeV", "SnV", "PbV"] = "SiV"
    orientation: str = "111"
    n_points: int = Field(default=21, ge=2, le=201)
    cantilever_voltage_v: float | None = None


class SpectrumBody(BaseModel):
    species: Literal["SiV", "GeV", "SnV", "PbV"]
    temperature_k: float = Field(default=100.0, gt=0)
    n_cut: int = Field(default=20, ge=0, le=40)
    mode: Literal["PL", "PLE"] = "PL"
    broadening_thz: float = Field(default=0.0, ge=0)


class PhysicsError(ValueError):
    pass


def _scrub(obj):
    """Replace non-finite floats by None, flagging the response."""
    flagged = False

    def walk(x):
        nonlocal flagged
        if isinstance(x, float):
            if not math.isfinite(x):
                flagged = True
                return None
            return x
        if isinstance(x, dict):
            return {k: walk(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [walk(v) for v in x]
        return x

    cleaned = walk(obj)
    cleaned["numerical_error"] = flagged
    return cleaned


class _ResultCache:
    """Bounded, lock-protected memo keyed by a content hash of inputs."""

    def __init__(self, max_entries: int = 128):
        self._data: dict = {}
        self._lock = threading.Lock()
        self._max = max_entries

    def get_or_compute(self, key, compute):
        with self._lock:
            if key in self._data:
                return self._data[key]
        value = compute()
        with self._lock:
            if len(self._data) >= self._max:
                self._data.pop(next(iter(self._data)))
            self._data[key] = value
        return value


def compute_scubed(body: ScubedBody) -> dict:
    stress_gpa = body.stress_gpa
    if body.cantilever_voltage_v is not None:
        dims = el.CantileverDims(**bundled_data()["cantilever_prism_um"])
        eps = el.cantilever_strain(body.cantilever_voltage_v, dims)
        # report the cantilever strain directly alongside the conversion
        extra = {"cantilever_eps_xx": eps,
                 "cantilever_eps_xx_minus_yy":
                     el.volt_str_row(body.cantilever_voltage_v, dims)["eps_xx_minus_yy"]}
    else:
        extra = {}
    req = ScubedRequest(
        zpl_nm=body.zpl_nm,
        ground_splitting_ghz=body.ground_splitting_ghz,
        excited_splitting_ghz=body.excited_splitting_ghz,
        stress_gpa=stress_gpa,
        stress_direction=body.stress_direction,
        species=body.species,
        orientation=body.orientation,
        n_points=body.n_points,
    )
    try:
        result = run_scubed(req)
    except (ValueError, KeyError) as exc:
        raise PhysicsError(str(exc)) from exc
    payload = result.as_dict()
    payload.update(extra)
    payload["metadata"] = {"n_cut": 20}
    return payload


def compute_spectrum(body: SpectrumBody) -> dict:
    if body.n_cut < 2:
        raise PhysicsError(
            f"n_cut = {body.n_cut} cannot resolve excited vibronic states; need >= 2")
    sol_g = solve_manifold(load_params(body.species, "ground"), body.n_cut)
    sol_e = solve_manifold(load_params(body.species, "excited"), body.n_cut)
    n_states = 8
    dip = dipole_matrices(sol_g, sol_e, n_states)
    source = sol_e if body.mode == "PL" else sol_g
    pops = boltzmann_populations(source.energies[:n_states], body.temperature_k)
    zpl_thz = bundled_data()["zpl_reference_thz"][body.species]
    lines = pl_ple_spectrum(dip, pops, body.mode, zpl_thz=zpl_thz)
    return {
        "species": body.species,
        "mode": body.mode,
        "temperature_k": body.temperature_k,
        "broadening_thz": body.broadening_thz,
        "lines": [{"label": ln.label, "energy_thz": ln.energy_thz,
                   "intensity": ln.intensity, "polarization": ln.polarization,
                   "initial": ln.initial, "final": ln.final} for ln in lines],
        "metadata": {"n_cut": body.n_cut, "n_states": n_states},
    }


def create_app() -> FastAPI:
    app = FastAPI(title="xvcenter service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get("XVCENTER_UI_ORIGIN", "*")],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    cache = _ResultCache()

    @app.exception_handler(RequestValidationError)
    async def schema_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.exception_handler(PhysicsError)
    async def physics_error(request: Request, exc: PhysicsError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.get("/api/presets")
    async def presets():
        data = bundled_data()
        return {
            "species": list(SPECIES),
            "manifold_params": data["manifold_params"],
            "zpl_reference_thz": data["zpl_reference_thz"],
            "cantilever_prism_um": data["cantilever_prism_um"],
        }

    @app.post("/api/scubed")
    async def scubed(body: ScubedBody):
        key = repr(("scubed", tuple(sorted(body.model_dump().items()))))
        return _scrub(cache.get_or_compute(key, lambda: compute_scubed(body)))

    @app.post("/api/spectrum")
    async def spectrum(body: SpectrumBody):
        key = repr(("spectrum", tuple(sorted(body.model_dump().items()))))
        return _scrub(cache.get_or_compute(key, lambda: compute_spectrum(body)))

    return app


app = create_app()


def run(host: str | None = None, port: int | None = None):
    """Serve with uvicorn; bind address and port come from arguments or
    the XVCENTER_HOST / XVCENTER_PORT environment variables."""
    import uvicorn
    uvicorn.run(app,
                host=host or os.environ.get("XVCENTER_HOST", "127.0.0.1"),
                port=int(port or os.environ.get("XVCENTER_PORT", "8757")))

"""
src/core/brackets.py

Observables and the brackets evaluated on them.

Canonical bracket, summed over sites:

    {f, g} = Σ_j ∂f/∂p_j ∂g/∂q_j − ∂f/∂q_j ∂g/∂p_j,      {p_j, q_k} = δ_jk

Time evolution is ḟ = {H, f}, so q̇ = ∂H/∂p and ṗ = −∂H/∂q.

Dirac bracket on one site, with C12 = {c1, c2} (= −2 on-shell):

    {f, g}_D = {f, g} + ({f, c1}{c2, g} − {f, c2}{c1, g}) / C12

Observables carry analytic gradients where they have them; anything else
is central-differenced at FD_STEP.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.config import DET_GUARD, ONSHELL_TOL
from src.core.phase_space import COORDS, PhasePoint, constraint_gradients, constraint_values
from src.core.spin import PAIRING, spin_array, spin_jacobian
from src.errors import OffShellError, SingularMatrixError, ValidationError
from src.tools.numdiff import central_gradient


@dataclass(frozen=True)
class Observable:
    """A holomorphic function of the flat coordinate array (6·n entries)."""

    name: str
    fn: Callable[[np.ndarray], complex]
    grad_fn: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, z) -> complex:
        return complex(self.fn(_coords(z)))

    def gradient(self, z) -> np.ndarray:
        z = _coords(z)
        if self.grad_fn is not None:
            return np.asarray(self.grad_fn(z), dtype=complex)
        return central_gradient(self.fn, z)


def _coords(z) -> np.ndarray:
    if isinstance(z, PhasePoint):
        return z.as_array()
    return np.asarray(z, dtype=complex)


def _block(site: int) -> slice:
    return slice(6 * site, 6 * site + 6)


def _embed(z: np.ndarray, site: int, local: np.ndarray) -> np.ndarray:
    out = np.zeros(z.size, dtype=complex)
    out[_block(site)] = local
    return out


# ── Observable builders ───────────────────────────────────────────────────────

def coordinate(name: str, site: int = 0) -> Observable:
    if name not in COORDS:
        raise ValidationError(f"unknown coordinate {name!r}", field="observable")
    k = 6 * site + COORDS.index(name)

    def grad(z):
        out = np.zeros(z.size, dtype=complex)
        out[k] = 1.0
        return out

    return Observable(f"{name}[{site}]" if site else name, lambda z: z[k], grad)


def spin_component(alpha: int, site: int = 0) -> Observable:
    """X_α of one site, α ∈ {1, 2, 3}."""
    if alpha not in (1, 2, 3):
        raise ValidationError(f"alpha must be 1, 2 or 3, got {alpha}", field="observable")
    row = alpha - 1
    return Observable(
        f"X{alpha}[{site}]" if site else f"X{alpha}",
        lambda z: spin_array(z[_block(site)])[row],
        lambda z: _embed(z, site, spin_jacobian(z[_block(site)])[row]),
    )


def constraint_observable(index: int, site: int = 0) -> Observable:
    """c1 or c2 of one site."""
    if index not in (1, 2):
        raise ValidationError(f"constraint index must be 1 or 2, got {index}", field="observable")
    return Observable(
        f"c{index}[{site}]" if site else f"c{index}",
        lambda z: constraint_values(z[_block(site)])[index - 1],
        lambda z: _embed(z, site, constraint_gradients(z[_block(site)])[index - 1]),
    )


def spin_function(name: str, fn_x: Callable[[np.ndarray], complex],
                  grad_x: Callable[[np.ndarray], np.ndarray], site: int = 0) -> Observable:
    """F(X) of one site with its X-gradient lifted by the chain rule."""
    return Observable(
        name,
        lambda z: fn_x(spin_array(z[_block(site)])),
        lambda z: _embed(z, site, np.asarray(grad_x(spin_array(z[_block(site)]))) @
                         spin_jacobian(z[_block(site)])),
    )


def casimir_observable(site: int = 0) -> Observable:
    return spin_function(
        f"casimir[{site}]" if site else "casimir",
        lambda x: np.sum(PAIRING * x * x),
        lambda x: 2 * PAIRING * x,
        site,
    )


# ── Brackets ──────────────────────────────────────────────────────────────────

def canonical_bracket_grads(grad_f: np.ndarray, grad_g: np.ndarray) -> complex:
    gf = np.asarray(grad_f, dtype=complex).reshape(-1, 6)
    gg = np.asarray(grad_g, dtype=complex).reshape(-1, 6)
    return complex(np.sum(gf[:, :3] * gg[:, 3:]) - np.sum(gf[:, 3:] * gg[:, :3]))


def canonical_bracket(f: Observable, g: Observable, z) -> complex:
    z = _coords(z)
    return canonical_bracket_grads(f.gradient(z), g.gradient(z))


def hamiltonian_field(grad_h: np.ndarray) -> np.ndarray:
    """ż = {H, z}: q̇ = ∂H/∂p, ṗ = −∂H/∂q, block by block."""
    g = np.asarray(grad_h, dtype=complex).reshape(-1, 6)
    out = np.empty_like(g)
    out[:, :3] = -g[:, 3:]
    out[:, 3:] = g[:, :3]
    return out.reshape(-1)


def dirac_bracket(f: Observable, g: Observable, pt, check: bool = True) -> complex:
    """
    Dirac bracket on a single site.

    With check=False the constraint matrix is built from C12 at the given
    point and no on-shell test is made; Jacobi checks difference through
    that off-shell extension.
    """
    z = _coords(pt)
    if z.size != 6:
        raise ValidationError("the Dirac bracket is defined on a single site", field="observable")
    if check:
        c1, c2 = constraint_values(z)
        if max(abs(c1), abs(c2)) > ONSHELL_TOL:
            raise OffShellError(f"point is off-shell (|c1|={abs(c1):.3g}, |c2|={abs(c2):.3g})")

    gc1, gc2 = constraint_gradients(z)
    c12 = canonical_bracket_grads(gc1, gc2)
    if abs(c12) ** 2 < DET_GUARD:
        raise SingularMatrixError(f"constraint matrix is singular ({{c1,c2}}={c12:.3g})")

    gf, gg = f.gradient(z), g.gradient(z)
    f_c1 = canonical_bracket_grads(gf, gc1)
    f_c2 = canonical_bracket_grads(gf, gc2)
    c1_g = canonical_bracket_grads(gc1, gg)
    c2_g = canonical_bracket_grads(gc2, gg)
    return canonical_bracket_grads(gf, gg) + (f_c1 * c2_g - f_c2 * c1_g) / c12


def dirac_flow(h: Observable, pt, check: bool = True) -> np.ndarray:
    """({H, p0}_D, …, {H, q3}_D): the constrained Hamiltonian field of H."""
    return np.array([dirac_bracket(h, coordinate(name), pt, check) for name in COORDS])


def jacobi_residual(f: Observable, g: Observable, h: Observable, pt) -> complex:
    """{f,{g,h}_D}_D + cyclic, inner brackets central-differenced off-shell."""

    def inner(a: Observable, b: Observable) -> Observable:
        return Observable(f"{{{a.name},{b.name}}}",
                          lambda z: dirac_bracket(a, b, z, check=False))

    z = _coords(pt)
    return (dirac_bracket(f, inner(g, h), z, check=False)
            + dirac_bracket(g, inner(h, f), z, check=False)
            + dirac_bracket(h, inner(f, g), z, check=False))

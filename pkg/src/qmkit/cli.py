"""
Command-line front end.

Every subcommand builds either a record (key/value pairs) or a table and
hands it to one renderer, so ``--out``, ``--precision`` and ``--output``
behave the same everywhere.  Library domain errors exit with status 1,
usage errors with status 2.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analytic, bands, fourier, grid, manybody, quanta, scattering, spin
from . import io as qio
from .constants import GAMMA_E, unit_system
from .errors import QMError


class UsageError(Exception):
    pass


# --- rendering ---------------------------------------------------------------

class Record(dict):
    """Ordered key/value output."""


class Table:
    def __init__(self, header, rows):
        self.header = list(header)
        self.rows = [list(r) for r in rows]


class Raw(str):
    """Pre-formatted text passed through unchanged."""


def _num(v, precision):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.{precision}g}"
    if isinstance(v, (complex, np.complexfloating)):
        return f"{v.real:.{precision}g}{v.imag:+.{precision}g}j"
    return str(v)


def render(result, mode, precision):
    if isinstance(result, Raw):
        return str(result)
    if isinstance(result, Table):
        if mode == "json":
            rows = [dict(zip(result.header, (qio.to_jsonable(v) for v in r))) for r in result.rows]
            return json.dumps(rows, indent=2) + "\n"
        if mode == "csv":
            return qio.write_rows(result.header, ([v if not isinstance(v, (int, np.integer)) or isinstance(v, bool)
                                                   else float(v) for v in r] for r in result.rows), precision)
        cells = [result.header] + [[_num(v, precision) for v in r] for r in result.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(result.header))]
        return "".join("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in cells)
    # record
    if mode == "json":
        return json.dumps(qio.to_jsonable(dict(result)), indent=2) + "\n"
    if mode == "csv":
        lines = ["key,value"]
        for k, v in result.items():
            if isinstance(v, (float, np.floating)):
                v = qio.fmt(v, precision)
            lines.append(f"{k},{_num(v, precision)}")
        return "\n".join(lines) + "\n"
    width = max((len(k) for k in result), default=0)
    return "".join(f"{k.ljust(width)} = {_num(v, precision)}\n" for k, v in result.items())


# --- argument helpers --------------------------------------------------------

def parse_range(text, unit=1.0, suffix=None):
    """'a:b:n' -> linspace(a, b, n); a trailing ``suffix`` on a or b multiplies by ``unit``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like start:stop:count, got {text!r}")

    def val(s):
        if suffix and s.endswith(suffix):
            return float(s[: -len(suffix)] or 1.0) * unit
        return float(s)

    try:
        lo, hi, n = val(parts[0]), val(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None
    if n < 1:
        raise UsageError("range count must be >= 1")
    return np.linspace(lo, hi, n)


def _constants(args):
    return unit_system(args.units)


def _energy_unit(args):
    """Scale for user-facing energies: eV in SI, plain numbers in natural units."""
    return _constants(args).eV


# --- subcommands -------------------------------------------------------------

def cmd_constants(args):
    if args.json:
        args.out = "json"
    return Record(sorted(_constants(args).as_dict().items()))


def cmd_quanta(args):
    u = _constants(args)
    if args.what == "photon":
        p = quanta.photon_props(args.f, u)
        return Record(frequency=p.frequency, energy=p.energy, energy_eV=p.energy / u.eV, momentum=p.momentum,
                      wavelength=p.wavelength, omega=p.omega, k=p.k)
    if args.what == "matter":
        mass = {"electron": u.m_e, "proton": u.m_p, "neutron": u.m_n}.get(args.mass)
        mass = float(args.mass) if mass is None else mass
        w = quanta.matter_wave(mass, args.v, u)
        return Record(momentum=w.momentum, wavelength=w.wavelength, k=w.k)
    if args.what == "photoelectric":
        try:
            K = quanta.photoelectric_kinetic(args.f, args.phi, u)
        except quanta.BelowThreshold as exc:
            return Record(kinetic_eV=0.0, emitted=False, threshold_frequency=exc.threshold_frequency)
        return Record(kinetic_eV=K, emitted=True, threshold_frequency=quanta.threshold_frequency(args.phi, u))
    if args.what == "bohr":
        o = quanta.bohr_orbit(args.n, u)
        return Record(n=o.n, radius=o.radius, speed=o.speed, energy=o.energy, energy_eV=o.energy / u.eV)
    if args.what == "rydberg":
        n2 = math.inf if args.n2 in ("inf", "infinity") else int(args.n2)
        lam = quanta.rydberg_wavelength(args.n1, n2, u)
        return Record(n1=args.n1, n2=str(n2), wavelength=lam, energy_eV=quanta.transition_energy(args.n1, n2, u) / u.eV)
    raise UsageError(f"unknown quanta calculation {args.what!r}")


def _read_potential(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] < 2:
        raise UsageError("potential file needs columns x,V")
    x = data[:, 0]
    g = grid.Grid1D(float(x[0]), float(x[-1]), len(x))
    if not np.allclose(x, g.x, rtol=0, atol=1e-9 * (g.x_max - g.x_min)):
        raise UsageError("potential file x column must be uniformly spaced")
    return g, data[:, 1]


def cmd_solve(args):
    u = _constants(args)
    hbar, mass = u.hbar, u.m_e
    exact = None
    if args.potential == "box":
        g = grid.Grid1D(0.0, args.L, args.points)
        V = np.zeros(g.n_points)
        exact = lambda n: analytic.box_state(n, args.L, mass, hbar).energy
    elif args.potential == "sho":
        half = args.L if args.L_given else 12.0 * math.sqrt(hbar / (mass * args.omega))
        g = grid.Grid1D(-half, half, args.points)
        V = 0.5 * mass * args.omega**2 * g.x**2
        exact = lambda n: hbar * args.omega * (n - 0.5)
    else:
        g, V = _read_potential(args.potential)
    spec = grid.solve_eigen(grid.assemble_hamiltonian(g, V, mass, hbar), args.states)
    if args.save_dir:
        qio.save_spectrum(spec, args.save_dir, args.precision)
    if args.emit_state is not None:
        if not 0 <= args.emit_state < len(spec):
            raise UsageError("--emit-state index out of range")
        return Raw(qio.wavefunction_to_csv(spec.states[args.emit_state], args.precision))
    rows = []
    for n, E in enumerate(spec.energies, start=1):
        row = [n, float(E)]
        if exact is not None:
            ref = exact(n)
            row += [ref, abs(E - ref) / abs(ref)]
        rows.append(row)
    header = ["n", "E"] + (["E_exact", "rel_error"] if exact is not None else [])
    return Table(header, rows)


def cmd_hydrogen(args):
    u = _constants(args)
    st = analytic.hydrogen_state(args.n, args.l, args.m, Z=args.Z, units=u)
    if args.sample_r is None:
        return Record(label=st.label, n=args.n, l=args.l, m=args.m, Z=args.Z, energy=st.energy,
                      energy_eV=st.energy / u.eV, a=st.a, degeneracy=analytic.hydrogen_degeneracy(args.n))
    r = parse_range(args.sample_r, st.a, "a")
    R = st.radial(r)
    dens = np.abs(st(r, args.theta, 0.0)) ** 2
    return Table(["r", "R", "density"], zip(r, R, dens))


def cmd_sho(args):
    u = _constants(args)
    if args.matrices:
        b = analytic.oscillator_basis(args.dim, u.m_e, args.omega, u.hbar)
        args.out = "json"
        return Record(b.as_dict())
    unc = analytic.sho_uncertainties(args.n, u.m_e, args.omega, u.hbar)
    return Record(n=args.n, energy=u.hbar * args.omega * (args.n + 0.5), dX=unc["dX"], dP=unc["dP"],
                  product=unc["product"], product_over_hbar=unc["product"] / u.hbar)


def cmd_transform(args):
    psi = qio.wavefunction_from_csv(Path(args.input))
    if args.parseval:
        nx, np_ = fourier.parseval_norms(psi, args.hbar)
        return Record(position_norm2=nx, momentum_norm2=np_, difference=abs(nx - np_))
    phi = fourier.fourier_transform(psi, args.hbar, method=args.method)
    return Raw(qio.write_rows(("p", "re", "im"), zip(phi.p, phi.values.real, phi.values.imag), args.precision))


def cmd_scatter(args):
    u = _constants(args)
    unit = _energy_unit(args)
    mass = u.m_e if args.mass is None else args.mass
    if args.kind == "step":
        if args.sweep:
            Es = parse_range(args.sweep)
            rows = [(E, r.R, r.T) for E in Es for r in [scattering.step_scatter(E * unit, args.V * unit, mass, u.hbar)]]
            return Table(["E", "R", "T"], rows)
        r = scattering.step_scatter(args.E * unit, args.V * unit, mass, u.hbar)
        return Record(E=args.E, V=args.V, R=r.R, T=r.T, R_plus_T=r.R + r.T)
    if args.width is None:
        raise UsageError("scatter barrier needs --width")
    a = 0.5 * args.width
    Es = parse_range(args.sweep) if args.sweep else [args.E]
    rows = []
    for E in Es:
        r = scattering.barrier_transmission(E * unit, args.V * unit, a, mass, u.hbar)
        rows.append((E, r.R, r.T, r.log10T))
    if args.sweep:
        return Table(["E", "R", "T", "log10T"], rows)
    E, R, T, lt = rows[0]
    return Record(E=E, V=args.V, width=args.width, R=R, T=T, log10T=lt)


def _direction(args):
    if args.axis:
        return spin.Direction.axis(args.axis)
    return spin.Direction(args.theta, args.phi)


def cmd_spin(args):
    u = _constants(args)
    if args.what == "larmor":
        t = parse_range(args.t)
        res = spin.larmor_quantum(spin.Direction(args.theta, args.phi), args.gamma, args.B, t, u.hbar)
        return Table(["t", "Sx", "Sy", "Sz"], ([ti, *s] for ti, s in zip(t, res.expectations)))
    if args.what == "measure":
        try:
            amps = [complex(s.replace(" ", "")) for s in args.state.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse --state {args.state!r}") from None
        if len(amps) != 2:
            raise UsageError("--state needs two amplitudes a,b")
        m = spin.measure_spin(spin.SpinState(*amps), _direction(args))
        return Record(p_plus=m.p_plus, p_minus=m.p_minus,
                      plus_up=m.collapsed_plus.up, plus_down=m.collapsed_plus.down,
                      minus_up=m.collapsed_minus.up, minus_down=m.collapsed_minus.down)
    if args.what == "zeeman":
        z = spin.zeeman_splitting(args.B, args.gamma, u)
        return Record(B=args.B, delta_E=z.delta_E, frequency=z.frequency)
    raise UsageError(f"unknown spin calculation {args.what!r}")


def cmd_stats(args):
    u = _constants(args)
    k_B = u.k_boltzmann_ev if u.mode.value == "si" else u.k_boltzmann
    if args.what == "occupation":
        model = manybody.OccupationModel(args.kind, args.T, args.mu, k_B)
        E = parse_range(args.E)
        return Table(["E", "n"], zip(E, np.atleast_1d(manybody.occupation(E, model))))
    if args.what == "mu":
        levels = []
        for item in args.levels.split(","):
            e, _, g = item.partition(":")
            levels.append((float(e), float(g or 1)))
        mu = manybody.solve_chemical_potential(levels, args.N, args.T, args.kind, k_B)
        return Record(mu=mu, N=args.N, T=args.T, kind=args.kind)
    if args.what == "fermi":
        EF = manybody.fermi_energy(args.density, 1.0, u.m_e, u)
        return Record(density=args.density, E_F=EF, E_F_eV=EF / u.eV)
    raise UsageError(f"unknown stats calculation {args.what!r}")


def cmd_manybody(args):
    if args.what in ("antisym", "sym"):
        labels = [s.strip() for s in args.labels.split(",") if s.strip()]
        st = manybody.antisymmetrize(labels) if args.what == "antisym" else manybody.symmetrize(labels)
        args.out = "json"
        return Record(st.to_dict())
    if args.what == "shells":
        cfg = manybody.fill_shells(args.Z)
        return Record(Z=args.Z, configuration=manybody.format_configuration(cfg))
    raise UsageError(f"unknown manybody calculation {args.what!r}")


def cmd_bands(args):
    p = bands.KPParams(args.a, args.b, args.V)
    bs = bands.kp_bands(p, args.Emax, args.scan)
    if args.curve:
        E = bands.scan_energies(args.Emax, args.scan)
        Path(args.curve).write_text(qio.write_rows(("E", "f"), zip(E, bands.kp_dispersion(E, p)), args.precision))
    if args.out == "table":
        rows = [("band", lo, hi) for lo, hi in bs.bands] + [("gap", lo, hi) for lo, hi in bs.gaps]
        rows.sort(key=lambda r: r[1])
        return Table(["kind", "E_lo", "E_hi"], rows)
    if args.out == "csv":
        return Table(["E_lo", "E_hi"], bs.bands)
    return Record(bs.as_dict())


def cmd_exercises(args):
    from .exercises import run_exercises

    results = run_exercises(args.chapter)
    args.failed = any(not r.passed for r in results)
    return Table(["id", "computed", "oracle", "deviation", "status"],
                 [(r.id, r.computed, r.oracle, r.deviation, "pass" if r.passed else "FAIL") for r in results])


# --- parser ------------------------------------------------------------------

def _precision(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("precision must be an integer") from None
    if not 3 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must lie in [3, 17]")
    return p


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--units", choices=("si", "natural"), default=argparse.SUPPRESS)
    common.add_argument("--out", choices=("table", "csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--precision", type=_precision, default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS, help="write to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="qmkit", description="Quantum mechanics toolkit")
    parser.add_argument("--units", choices=("si", "natural"), default=None)
    parser.add_argument("--out", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--precision", type=_precision, default=10)
    parser.add_argument("--output", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, default_units="si"):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func, default_units=default_units)
        return p

    p = add("constants", cmd_constants, "dump the constant table")
    p.add_argument("--json", action="store_true")

    p = add("quanta", cmd_quanta, "photons, matter waves, Bohr atom")
    p.add_argument("what", choices=("photon", "matter", "photoelectric", "bohr", "rydberg"))
    p.add_argument("--f", type=float, help="frequency (Hz)")
    p.add_argument("--phi", type=float, help="work function (eV)")
    p.add_argument("--mass", default="electron", help="electron, proton, neutron or a mass in kg")
    p.add_argument("--v", type=float, help="speed (m/s)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--n2", default="2")

    p = add("solve", cmd_solve, "finite-difference eigenstates", default_units="natural")
    p.add_argument("--potential", default="box", help="box, sho, or a CSV file with columns x,V")
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--states", type=int, default=5)
    p.add_argument("--L", type=float, default=None, help="box length, or half-width for sho")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--save-dir", default=None, help="write spectrum.json and state CSVs here")
    p.add_argument("--emit-state", type=int, default=None, help="print state n (0-based) as x,re,im CSV")

    p = add("hydrogen", cmd_hydrogen, "hydrogen-like orbitals")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--Z", type=int, default=1)
    p.add_argument("--sample-r", default=None, help="r range start:stop:count; suffix a means Bohr radii")
    p.add_argument("--theta", type=float, default=0.0)

    p = add("sho", cmd_sho, "harmonic oscillator in the number basis", default_units="natural")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--dim", type=int, default=12)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--matrices", action="store_true")

    p = add("transform", cmd_transform, "momentum representation of a CSV wavefunction", default_units="natural")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--parseval", action="store_true")
    p.add_argument("--method", choices=("quadrature", "fft"), default="quadrature")

    p = add("scatter", cmd_scatter, "step and barrier scattering (energies in eV for SI)")
    p.add_argument("kind", choices=("step", "barrier"))
    p.add_argument("--E", type=float, default=1.0)
    p.add_argument("--V", type=float, required=True)
    p.add_argument("--width", type=float, default=None, help="full barrier width 2a")
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--sweep", default=None, help="energy range E0:E1:N")

    p = add("spin", cmd_spin, "spin-1/2 measurement and precession")
    p.add_argument("what", choices=("larmor", "measure", "zeeman"))
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=-GAMMA_E, help="signed gyromagnetic ratio (electron: -1.76e11)")
    p.add_argument("--t", default="0:1e-10:11", help="time range t0:t1:N")
    p.add_argument("--state", default="1,0")
    p.add_argument("--axis", choices=("x", "y", "z", "-x", "-y", "-z"), default=None)

    p = add("stats", cmd_stats, "occupation statistics (energies in eV for SI)")
    p.add_argument("what", choices=("occupation", "mu", "fermi"))
    p.add_argument("--kind", choices=("mb", "be", "fd"), default="fd")
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--T", type=float, default=300.0)
    p.add_argument("--E", default="0:1:11")
    p.add_argument("--levels", default="0:1,1:1", help="E:g pairs")
    p.add_argument("--N", type=float, default=1.0)
    p.add_argument("--density", type=float, default=1e27)

    p = add("manybody", cmd_manybody, "identical-particle states")
    p.add_argument("what", choices=("antisym", "sym", "shells"))
    p.add_argument("--labels", default="a,b")
    p.add_argument("--Z", type=int, default=1)

    p = add("bands", cmd_bands, "Kronig-Penney bands", default_units="natural")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=0.3)
    p.add_argument("--V", type=float, default=10.0)
    p.add_argument("--Emax", type=float, default=60.0)
    p.add_argument("--scan", type=int, default=None)
    p.add_argument("--curve", default=None, help="write E,f(E) CSV here")

    p = add("exercises", cmd_exercises, "rerun the exercise catalogue against its oracles")
    p.add_argument("--chapter", type=int, default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.units is None:
        args.units = args.default_units
    if getattr(args, "L", "missing") != "missing":
        args.L_given = args.L is not None
        if args.L is None:
            args.L = 1.0
    args.failed = False
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except QMError as exc:
        print(f"qmkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = render(result, args.out, args.precision)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 1 if args.failed else 0


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end.

Subcommands: simulate, psd, entropy, sweep, extract, invert-variance.
Every run resolves its configuration (defaults, then --config JSON,
then flags), echoes the resolved form in a JSON report, and derives
all stream seeds from one master seed, so re-running a report's
configuration reproduces the primary outputs byte for byte.

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 domain error
(model-inconsistent inputs such as an out-of-range variance).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .entropy import (
    EntropyReport,
    METHOD_ANALYTIC,
    METHOD_EMPIRICAL,
    analytic_min_entropy,
    code_histogram,
    empirical_min_entropy,
    invert_variance,
    phase_variance,
    quantum_variance_from_measurement,
)
from .errors import (
    AllPointsFailedError,
    AmbiguousInputError,
    DelayTooSmallError,
    InvalidParameterError,
    LpnError,
)
from .extractor import (
    GF2_BACKEND,
    ToeplitzSpec,
    extract_stream,
    monobit_test,
    output_bits_for,
    pack_bits_to_bytes,
    runs_test,
    unpack_bytes_to_bits,
)
from .optimizer import SimSettings, SweepGrid, sweep
from .params import (
    AdcSpec,
    DEFAULT_N_SAMPLES,
    DEFAULT_SAMPLE_PERIOD_S,
    DEFAULT_SIGMA_ELE,
    SystemParams,
)
from .rng import (
    STREAM_ELECTRONIC,
    STREAM_PHASE,
    STREAM_TOEPLITZ,
    bit_stream,
    derive_seed,
)
from .simulate import (
    add_electronic_noise,
    delay_index,
    quantize,
    quantum_noise,
    sample_phase_path,
)
from .spectral import (
    DEFAULT_NFFT,
    DEFAULT_OVERLAP,
    DEFAULT_PLATEAU_BINS,
    bandwidth_3db,
    estimate_psd,
)
from .traceio import (
    read_analog_trace,
    read_quantized_trace,
    write_analog_trace,
    write_quantized_trace,
)

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------- config

def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"config file {p} does not exist")
    try:
        cfg = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"config {p} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InvalidParameterError(f"config {p} must hold a JSON object")
    return cfg


def _resolve_system(cfg: dict, args: argparse.Namespace) -> SystemParams:
    sys_cfg = dict(cfg.get("system", {}))
    adc_cfg = dict(sys_cfg.get("adc", {}))
    for flag, key in (("adc_bits", "bits"), ("adc_range", "range")):
        v = getattr(args, flag, None)
        if v is not None:
            adc_cfg[key] = v
    for flag in ("linewidth_hz", "delay_s", "amplitude", "sigma_ele",
                 "sample_period_s"):
        v = getattr(args, flag, None)
        if v is not None:
            sys_cfg[flag] = v
    if "linewidth_hz" not in sys_cfg or "delay_s" not in sys_cfg:
        raise InvalidParameterError(
            "linewidth_hz and delay_s are required (flags or config)")
    adc = AdcSpec(bits=int(adc_cfg.get("bits", 8)),
                  range=float(adc_cfg.get("range", 1.0)))
    return SystemParams(
        linewidth_hz=float(sys_cfg["linewidth_hz"]),
        delay_s=float(sys_cfg["delay_s"]),
        amplitude=(None if sys_cfg.get("amplitude") is None
                   else float(sys_cfg["amplitude"])),
        sigma_ele=float(sys_cfg.get("sigma_ele", DEFAULT_SIGMA_ELE)),
        sample_period_s=float(sys_cfg.get("sample_period_s",
                                          DEFAULT_SAMPLE_PERIOD_S)),
        adc=adc,
    )


def _first(*values):
    for v in values:
        if v is not None:
            return v
    return None


def _resolve_sim(cfg: dict, args: argparse.Namespace) -> tuple[int, int]:
    sim_cfg = dict(cfg.get("sim", {}))
    n_samples = int(_first(getattr(args, "n_samples", None),
                           sim_cfg.get("n_samples"), DEFAULT_N_SAMPLES))
    seed = int(_first(getattr(args, "seed", None),
                      sim_cfg.get("master_seed"), 1))
    return n_samples, seed


def _resolve_spectral(cfg: dict, args: argparse.Namespace) -> dict:
    sp = dict(cfg.get("spectral", {}))
    return {
        "nfft": int(_first(getattr(args, "nfft", None), sp.get("nfft"),
                           DEFAULT_NFFT)),
        "overlap_fraction": float(_first(getattr(args, "overlap", None),
                                         sp.get("overlap_fraction"),
                                         DEFAULT_OVERLAP)),
        "plateau_bins": int(_first(getattr(args, "plateau_bins", None),
                                   sp.get("plateau_bins"),
                                   DEFAULT_PLATEAU_BINS)),
    }


# ---------------------------------------------------------------- output

def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _write_report(out_dir: Path, report: dict, name: str = "report.json") -> Path:
    path = out_dir / name
    path.write_text(json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")
    return path


def _report_skeleton(command: str, resolved_config: dict) -> dict:
    return {
        "tool": {"name": "lpnqrng", "version": __version__,
                 "gf2_backend": GF2_BACKEND},
        "command": command,
        "resolved_config": resolved_config,
    }


def _entropy_dict(rep: EntropyReport) -> dict:
    return {"p_c": rep.p_c, "p_r": rep.p_r, "p_max": rep.p_max,
            "h_min_bits": rep.h_min, "sigma2_rad2": rep.sigma2,
            "method": rep.method}


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fmt(x: float) -> str:
    return f"{x:.17g}"


# ------------------------------------------------------------- commands

def cmd_simulate(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    cfg = _load_config(args.config)
    system = _resolve_system(cfg, args)
    n_samples, master_seed = _resolve_sim(cfg, args)
    quantize_source = _first(args.quantize_source,
                             cfg.get("quantize_source"), "quantum")
    if quantize_source not in ("quantum", "measured"):
        raise InvalidParameterError(
            f"quantize_source must be 'quantum' or 'measured', "
            f"got {quantize_source!r}")
    out = _out_dir(args)

    k = delay_index(system.delay_s, system.sample_period_s)
    phase_seed = derive_seed(master_seed, STREAM_PHASE)
    ele_seed = derive_seed(master_seed, STREAM_ELECTRONIC)
    path = sample_phase_path(system.linewidth_hz, system.sample_period_s,
                             n_samples, phase_seed)
    q = quantum_noise(path, k, system.amplitude)
    m = add_electronic_noise(q, system.sigma_ele, ele_seed)
    source = q if quantize_source == "quantum" else m
    codes = quantize(source, system.adc)

    q_path = out / "quantum.f64"
    m_path = out / "measured.f64"
    c_path = out / "codes.i16"
    write_analog_trace(q_path, q, system=system, seed=master_seed)
    write_analog_trace(m_path, m, system=system, seed=master_seed)
    write_quantized_trace(c_path, codes, system=system, seed=master_seed)

    resolved = {
        "system": system.to_dict(),
        "sim": {"n_samples": n_samples, "master_seed": master_seed},
        "quantize_source": quantize_source,
    }
    report = _report_skeleton("simulate", resolved)
    report["seeds"] = {"master": master_seed, "phase": phase_seed,
                       "electronic": ele_seed}
    report["results"] = {
        "delay_samples": k,
        "trace_samples": len(q),
        "files": {"quantum": str(q_path), "measured": str(m_path),
                  "codes": str(c_path)},
    }
    report["timing_s"] = {"total": time.perf_counter() - t0}
    rp = _write_report(out, report)
    print(f"wrote {q_path} {m_path} {c_path} ({len(q)} samples); report {rp}")
    return 0


def cmd_psd(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    cfg = _load_config(args.config)
    spectral_cfg = _resolve_spectral(cfg, args)
    out = _out_dir(args)
    trace, meta = read_analog_trace(args.trace)
    psd = estimate_psd(trace, spectral_cfg["nfft"],
                       spectral_cfg["overlap_fraction"])
    bw = bandwidth_3db(psd, spectral_cfg["plateau_bins"])

    csv_path = out / "psd.csv"
    lines = ["freq_hz,power_v2_per_hz"]
    lines += [f"{_fmt(f)},{_fmt(p)}" for f, p in zip(psd.freqs, psd.power)]
    csv_path.write_text("\n".join(lines) + "\n")

    resolved = {"trace": str(args.trace), "spectral": spectral_cfg}
    report = _report_skeleton("psd", resolved)
    report["results"] = {
        "n_segments": psd.n_segments,
        "nyquist_hz": psd.nyquist_hz,
        "bandwidth": {"b_es_hz": bw.b_es_hz,
                      "reference_level": bw.reference_level,
                      "saturated": bw.saturated},
        "trace_label": meta.get("label"),
        "files": {"psd_csv": str(csv_path)},
    }
    report["timing_s"] = {"total": time.perf_counter() - t0}
    rp = _write_report(out, report)
    print(f"b_es_hz={_fmt(bw.b_es_hz)} saturated={bw.saturated}; "
          f"csv {csv_path}; report {rp}")
    return 0


def _degenerate_report(sigma2: float) -> EntropyReport:
    # zero variance: all mass in the center code
    return EntropyReport(p_c=1.0, p_r=0.0, p_max=1.0, h_min=0.0,
                         sigma2=sigma2, method=METHOD_ANALYTIC)


def cmd_entropy(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    cfg = _load_config(args.config)
    sys_cfg = dict(cfg.get("system", {}))
    # config may carry the design point and converter like any other command
    for flag, key in (("linewidth_hz", "linewidth_hz"), ("delay_s", "delay_s"),
                      ("amplitude", "amplitude")):
        if getattr(args, flag) is None and sys_cfg.get(key) is not None:
            setattr(args, flag, float(sys_cfg[key]))
    adc_cfg = dict(sys_cfg.get("adc", {}))
    if args.adc_bits is None and "bits" in adc_cfg:
        args.adc_bits = int(adc_cfg["bits"])
    if args.adc_range is None and "range" in adc_cfg:
        args.adc_range = float(adc_cfg["range"])
    modes = [args.codes is not None,
             args.sigma_q2 is not None,
             args.linewidth_hz is not None or args.delay_s is not None]
    if sum(modes) > 1:
        raise AmbiguousInputError(
            "give exactly one of: --codes, --sigma-q2, or --linewidth-hz/--delay-s")
    if sum(modes) == 0:
        raise InvalidParameterError(
            "one input mode is required: --codes, --sigma-q2, "
            "or --linewidth-hz with --delay-s")

    resolved: dict = {}
    histogram = None
    if args.codes is not None:
        qt, meta = read_quantized_trace(args.codes)
        rep = empirical_min_entropy(qt)
        resolved = {"mode": "empirical", "codes": str(args.codes),
                    "adc": qt.adc.to_dict()}
        if args.histogram_csv:
            counts = code_histogram(qt)
            codes_axis = np.arange(qt.adc.code_min, qt.adc.code_max + 1)
            lines = ["code,count,frequency"]
            lines += [f"{c},{n},{_fmt(n / len(qt))}"
                      for c, n in zip(codes_axis, counts)]
            Path(args.histogram_csv).write_text("\n".join(lines) + "\n")
            histogram = str(args.histogram_csv)
    else:
        adc = AdcSpec(bits=args.adc_bits or 8, range=args.adc_range or 1.0)
        amplitude = args.amplitude if args.amplitude is not None \
            else adc.default_amplitude()
        if args.sigma_q2 is not None:
            sigma2 = invert_variance(args.sigma_q2, amplitude)
            resolved = {"mode": "variance", "sigma_q2": args.sigma_q2}
        else:
            if args.linewidth_hz is None or args.delay_s is None:
                raise InvalidParameterError(
                    "design mode needs both --linewidth-hz and --delay-s")
            sigma2 = phase_variance(args.linewidth_hz, args.delay_s)
            resolved = {"mode": "design", "linewidth_hz": args.linewidth_hz,
                        "delay_s": args.delay_s}
        resolved.update({"amplitude": amplitude, "adc": adc.to_dict()})
        rep = (_degenerate_report(sigma2) if sigma2 == 0.0
               else analytic_min_entropy(sigma2, amplitude, adc))

    report = _report_skeleton("entropy", resolved)
    report["results"] = _entropy_dict(rep)
    if histogram:
        report["results"]["files"] = {"histogram_csv": histogram}
    report["timing_s"] = {"total": time.perf_counter() - t0}
    if args.format == "csv":
        print("p_c,p_r,p_max,h_min_bits,sigma2_rad2,method")
        print(f"{_fmt(rep.p_c)},{_fmt(rep.p_r)},{_fmt(rep.p_max)},"
              f"{_fmt(rep.h_min)},"
              f"{'' if rep.sigma2 is None else _fmt(rep.sigma2)},{rep.method}")
    else:
        print(json.dumps(_jsonable(report), indent=2, sort_keys=True))
    if args.out_dir is not None:
        _write_report(_out_dir(args), report)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    cfg = _load_config(args.config)
    sweep_cfg = dict(cfg.get("sweep", {}))
    linewidths = (args.linewidths_hz if args.linewidths_hz
                  else sweep_cfg.get("linewidths_hz"))
    delays = args.delays_s if args.delays_s else sweep_cfg.get("delays_s")
    if not linewidths or not delays:
        raise InvalidParameterError(
            "sweep needs linewidths_hz and delays_s (flags or config)")
    # grids are index sets, not sequences: accept any order, sort once
    linewidths = tuple(sorted(float(x) for x in linewidths))
    delays = tuple(sorted(float(x) for x in delays))

    # the base template carries everything but the design point; it is
    # instantiated with the most forgiving grid corner so that a single
    # too-small delay fails per point instead of failing the whole grid
    ns = argparse.Namespace(**{**vars(args), "linewidth_hz": None,
                               "delay_s": None})
    base_cfg = dict(cfg)
    base_cfg["system"] = {**base_cfg.get("system", {}),
                          "linewidth_hz": linewidths[0], "delay_s": delays[-1]}
    try:
        system = _resolve_system(base_cfg, ns)
    except DelayTooSmallError as exc:
        raise AllPointsFailedError(
            f"every grid delay rounds below one sample: {exc}") from exc
    n_samples, master_seed = _resolve_sim(cfg, args)
    spectral_cfg = _resolve_spectral(cfg, args)
    method = args.entropy_method or cfg.get("entropy_method", METHOD_ANALYTIC)

    grid = SweepGrid(
        linewidths_hz=linewidths, delays_s=delays, base=system,
        sim=SimSettings(n_samples=n_samples, nfft=spectral_cfg["nfft"],
                        overlap_fraction=spectral_cfg["overlap_fraction"],
                        plateau_bins=spectral_cfg["plateau_bins"],
                        seed=master_seed),
        entropy_method=method)
    result = sweep(grid)
    if result.best is None:
        raise AllPointsFailedError(
            f"all {len(grid.linewidths_hz) * len(grid.delays_s)} points failed")

    out = _out_dir(args)
    csv_path = out / "sweep.csv"
    lines = ["linewidth_hz,delay_s,b_es_hz,h_min_bits,k_bits_per_s,f_s_hz,saturated"]
    for p in result.points:
        lines.append(
            f"{_fmt(p.linewidth_hz)},{_fmt(p.delay_s)},{_fmt(p.b_es_hz)},"
            f"{_fmt(p.h_min_bits)},{_fmt(p.k_bits_per_s)},{_fmt(p.f_s_hz)},"
            f"{'true' if p.saturated else 'false'}")
    csv_path.write_text("\n".join(lines) + "\n")

    resolved = {
        "system": system.to_dict(),
        "sim": {"n_samples": n_samples, "master_seed": master_seed},
        "spectral": spectral_cfg,
        "entropy_method": method,
        "sweep": {"linewidths_hz": list(linewidths), "delays_s": list(delays)},
    }
    report = _report_skeleton("sweep", resolved)
    report["seeds"] = {
        "master": master_seed,
        "per_point": [
            {"linewidth_hz": lw, "delay_s": d,
             "seed": derive_seed(master_seed, i, j)}
            for i, lw in enumerate(linewidths) for j, d in enumerate(delays)],
    }
    report["results"] = {
        "best": result.best.to_dict(),
        "ties": [p.to_dict() for p in result.ties],
        "n_points": len(result.points),
        "failures": [{"linewidth_hz": f.linewidth_hz, "delay_s": f.delay_s,
                      "error": f.error_code, "message": f.message}
                     for f in result.failures],
        "files": {"sweep_csv": str(csv_path)},
    }
    report["timing_s"] = {"total": time.perf_counter() - t0}
    rp = _write_report(out, report)
    b = result.best
    print(f"best: linewidth_hz={_fmt(b.linewidth_hz)} delay_s={_fmt(b.delay_s)} "
          f"k_bits_per_s={_fmt(b.k_bits_per_s)}; csv {csv_path}; report {rp}")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    out = _out_dir(args)
    qt, _ = read_quantized_trace(args.codes)
    n_in = args.n_in
    if (args.n_out is None) == (args.h_min is None):
        raise AmbiguousInputError("give exactly one of --n-out or --h-min")
    n_out = (args.n_out if args.n_out is not None
             else output_bits_for(args.h_min, qt.adc.bits, n_in))
    n_seed_bits = n_in + n_out - 1
    if args.seed_file is not None:
        seed_source = {"file": str(args.seed_file)}
        seed_bits = unpack_bytes_to_bits(Path(args.seed_file).read_bytes(),
                                         n_seed_bits)
    else:
        master = 1 if args.seed is None else args.seed
        toeplitz_seed = derive_seed(master, STREAM_TOEPLITZ)
        seed_source = {"derived_from_master": master,
                       "toeplitz_seed": toeplitz_seed}
        seed_bits = bit_stream(toeplitz_seed, n_seed_bits)
    spec = ToeplitzSpec(input_bits=n_in, output_bits=n_out, seed_bits=seed_bits)

    zero_seed = not bool(seed_bits.any())
    if zero_seed:
        print("warning: all-zero extractor seed produces all-zero output",
              file=sys.stderr)

    bits = extract_stream(qt, spec)
    bits_path = out / "random.bin"
    bits_path.write_bytes(pack_bits_to_bytes(bits))

    sanity = {"n_bits": int(bits.size)}
    if bits.size >= 100:
        sanity["monobit_p"] = monobit_test(bits)
        sanity["runs_p"] = runs_test(bits)
        sanity["passed_at_0.01"] = bool(min(sanity["monobit_p"],
                                            sanity["runs_p"]) > 0.01)
    resolved = {"codes": str(args.codes), "n_in": n_in, "n_out": n_out,
                "adc_bits": qt.adc.bits, "seed_source": seed_source}
    report = _report_skeleton("extract", resolved)
    report["results"] = {
        "n_blocks": int(bits.size // n_out) if n_out else 0,
        "output_bits": int(bits.size),
        "bits_per_input_sample": n_out * qt.adc.bits / n_in,
        "zero_seed": zero_seed,
        "sanity": sanity,
        "files": {"random_bits": str(bits_path)},
    }
    report["timing_s"] = {"total": time.perf_counter() - t0}
    rp = _write_report(out, report)
    print(f"extracted {bits.size} bits -> {bits_path}; report {rp}")
    return 0


def cmd_invert_variance(args: argparse.Namespace) -> int:
    sigma_q2 = quantum_variance_from_measurement(args.sigma_m2, args.sigma_c2)
    amplitude = args.amplitude
    sigma2 = 0.0 if sigma_q2 == 0.0 else invert_variance(sigma_q2, amplitude)
    product = sigma2 / TWO_PI
    resolved = {"sigma_m2": args.sigma_m2, "sigma_c2": args.sigma_c2,
                "amplitude": amplitude}
    report = _report_skeleton("invert-variance", resolved)
    report["results"] = {"sigma_q2": sigma_q2, "sigma2_rad2": sigma2,
                         "linewidth_delay_product": product}
    if args.format == "csv":
        print("sigma_q2,sigma2_rad2,linewidth_delay_product")
        print(f"{_fmt(sigma_q2)},{_fmt(sigma2)},{_fmt(product)}")
    else:
        print(json.dumps(_jsonable(report), indent=2, sort_keys=True))
    if args.out_dir is not None:
        _write_report(_out_dir(args), report)
    return 0


# --------------------------------------------------------------- parser

def _add_common(p: argparse.ArgumentParser, out_default: str | None = ".") -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--seed", type=int, help="master seed (64-bit)")
    p.add_argument("--out-dir", default=out_default, help="output directory")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="stdout format for result summaries")


def _add_system_flags(p: argparse.ArgumentParser,
                      design_point: bool = True) -> None:
    if design_point:
        p.add_argument("--linewidth-hz", type=float, help="laser linewidth (Hz)")
        p.add_argument("--delay-s", type=float, help="interferometer delay (s)")
    p.add_argument("--amplitude", type=float, help="signal peak (V)")
    p.add_argument("--sigma-ele", type=float, help="electronic noise std (V)")
    p.add_argument("--sample-period-s", type=float, help="sampling period (s)")
    p.add_argument("--adc-bits", type=int, help="ADC resolution (bits)")
    p.add_argument("--adc-range", type=float, help="ADC range (V)")


def _add_spectral_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nfft", type=int, help="Welch segment length")
    p.add_argument("--overlap", type=float, help="segment overlap fraction")
    p.add_argument("--plateau-bins", type=int,
                   help="bins averaged for the plateau reference")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpnqrng",
        description="Simulate, analyze and optimize a laser-phase-noise "
                    "quantum random number generator design.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate and store one trace set")
    _add_common(p)
    _add_system_flags(p)
    p.add_argument("--n-samples", type=int, help="phase path length")
    p.add_argument("--quantize-source", choices=("quantum", "measured"),
                   help="which trace feeds the ADC model (default quantum)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("psd", help="spectrum and 3-dB bandwidth of a trace")
    _add_common(p)
    _add_spectral_flags(p)
    p.add_argument("--trace", required=True, help="analog trace file")
    p.set_defaults(func=cmd_psd)

    p = sub.add_parser("entropy", help="min-entropy, analytic or empirical")
    _add_common(p, out_default=None)
    p.add_argument("--linewidth-hz", type=float, help="design mode: linewidth")
    p.add_argument("--delay-s", type=float, help="design mode: delay")
    p.add_argument("--sigma-q2", type=float,
                   help="variance mode: measured quantum-noise variance (V^2)")
    p.add_argument("--codes", help="empirical mode: code trace file")
    p.add_argument("--amplitude", type=float, help="signal peak (V)")
    p.add_argument("--adc-bits", type=int, help="ADC resolution (bits)")
    p.add_argument("--adc-range", type=float, help="ADC range (V)")
    p.add_argument("--histogram-csv", help="also write a code histogram CSV")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("sweep", help="grid search over (linewidth, delay)")
    _add_common(p)
    _add_system_flags(p, design_point=False)
    _add_spectral_flags(p)
    p.add_argument("--n-samples", type=int, help="phase path length per point")
    p.add_argument("--linewidths-hz", type=float, nargs="+",
                   help="grid linewidths (Hz)")
    p.add_argument("--delays-s", type=float, nargs="+", help="grid delays (s)")
    p.add_argument("--entropy-method", choices=(METHOD_ANALYTIC, METHOD_EMPIRICAL),
                   help="min-entropy route (default analytic)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("extract", help="Toeplitz-hash a code trace to bits")
    _add_common(p)
    p.add_argument("--codes", required=True, help="code trace file")
    p.add_argument("--n-in", type=int, required=True, help="input block bits")
    p.add_argument("--n-out", type=int, help="output block bits")
    p.add_argument("--h-min", type=float,
                   help="derive output bits from this min-entropy")
    p.add_argument("--seed-file", help="raw binary extractor seed")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("invert-variance",
                       help="phase-noise variance from measured variances")
    _add_common(p, out_default=None)
    p.add_argument("--sigma-m2", type=float, required=True,
                   help="measured signal variance (V^2)")
    p.add_argument("--sigma-c2", type=float, required=True,
                   help="classical noise variance (V^2)")
    p.add_argument("--amplitude", type=float, required=True,
                   help="signal peak (V)")
    p.set_defaults(func=cmd_invert_variance)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LpnError as exc:
        print(f"lpnqrng: error: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"lpnqrng: error: file-not-found: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"lpnqrng: error: io: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

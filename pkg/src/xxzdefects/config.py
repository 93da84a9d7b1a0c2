"""Run configuration files.

A config is a flat YAML mapping (format version 1)::

    format_version: 1
    mode: sweep            # sweep | evolve | compare | spectrum | oracle;
                           # optional when the caller supplies it
    L: 8
    J: 1.0                 # default 1
    epsilon: 0.0           # default 0
    d: 10.0                # default 10
    Delta: 0.0             # used by evolve / spectrum / oracle
    defects: [1, 2]        # default [1, 2]
    N: [2, 3, 4]           # int or list
    delta_grid: "0:20:0.25"     # "start:stop:step" (stop inclusive) or a list
    pair: [1, 2]           # defaults to defects
    initial_register: "phi(1,6,7,8)"   # label or list of sites
    t_grid: "0:40:0.02"
    tracked_registers: ["phi(1,6,7,8)", [2, 6, 7, 8]]
    output_path: out.csv
    threads: 4

Unknown keys are rejected.
"""
from dataclasses import asdict, dataclass, field

import numpy as np
import yaml

from .basis import parse_register_label, register_from_sites, register_label
from .errors import ConfigError, InvalidArgumentError
from .hamiltonian import ChainSpec

FORMAT_VERSION = 1
MODES = ("sweep", "evolve", "compare", "spectrum", "oracle")

_CHAIN_KEYS = {"L", "J", "Delta", "epsilon", "d", "defects"}
_RUN_KEYS = {
    "format_version", "mode", "N", "delta_grid", "pair", "initial_register",
    "t_grid", "tracked_registers", "output_path", "threads",
}


@dataclass
class RunConfig:
    chain: ChainSpec
    mode: str
    n_list: list = field(default_factory=list)
    delta_grid: list = field(default_factory=list)
    pair: tuple = None
    initial_register: int = None
    t_grid: list = field(default_factory=list)
    tracked_registers: list = field(default_factory=list)
    output_path: str = None
    threads: int = None


def parse_grid(value, key):
    """``"a:b:h"`` (inclusive of b) or an explicit list, strictly increasing."""
    if isinstance(value, str):
        parts = value.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range must look like start:stop:step, got {value!r}", key)
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"non-numeric range {value!r}", key) from None
        if step <= 0:
            raise ConfigError("range step must be positive", key)
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        grid = [start + i * step for i in range(n)]
    elif isinstance(value, (list, tuple)):
        grid = [_number(v, key) for v in value]
    else:
        grid = [_number(value, key)]
    if not grid:
        raise ConfigError("grid is empty", key)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("grid must be strictly increasing", key)
    return grid


def _number(v, key):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"expected a number, got {v!r}", key)
    return float(v)


def _integer(v, key):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"expected an integer, got {v!r}", key)
    return v


def _site_pair(v, key):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ConfigError(f"expected two sites, got {v!r}", key)
    return tuple(_integer(x, key) for x in v)


def _register(v, L, key):
    try:
        if isinstance(v, str):
            return parse_register_label(v, L)
        if isinstance(v, (list, tuple)):
            return register_from_sites(L, [_integer(x, key) for x in v])
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc), key) from None
    raise ConfigError(f"expected a register label or site list, got {v!r}", key)


def parse_config(text, mode=None):
    """Validate a YAML config; ``mode`` fills in a missing ``mode`` key."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a key-value mapping")
    unknown = set(raw) - _CHAIN_KEYS - _RUN_KEYS
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError("unknown key", key)
    version = raw.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ConfigError(f"unsupported version {version!r}", "format_version")
    mode = raw.get("mode", mode)
    if mode not in MODES:
        raise ConfigError(f"must be one of {', '.join(MODES)}, got {mode!r}", "mode")

    if "L" not in raw:
        raise ConfigError("missing", "L")
    L = _integer(raw["L"], "L")
    chain_args = {"L": L}
    for key in ("J", "Delta", "epsilon", "d"):
        if key in raw:
            chain_args[key] = _number(raw[key], key)
    if "defects" in raw:
        chain_args["defect_sites"] = _site_pair(raw["defects"], "defects")
    try:
        chain = ChainSpec(**chain_args)
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc), "chain") from None

    cfg = RunConfig(chain=chain, mode=mode)
    if "N" in raw:
        n = raw["N"]
        cfg.n_list = [_integer(x, "N") for x in (n if isinstance(n, list) else [n])]
        if any(not 0 <= x <= L for x in cfg.n_list):
            raise ConfigError(f"excitation counts must lie in 0..{L}", "N")
    if "delta_grid" in raw:
        cfg.delta_grid = parse_grid(raw["delta_grid"], "delta_grid")
        if cfg.delta_grid[0] < 0:
            raise ConfigError("Delta must be >= 0", "delta_grid")
    cfg.pair = _site_pair(raw["pair"], "pair") if "pair" in raw else chain.defect_sites
    if len(set(cfg.pair)) != 2 or not all(1 <= n <= L for n in cfg.pair):
        raise ConfigError(f"sites must be distinct and in 1..{L}", "pair")
    if "initial_register" in raw:
        cfg.initial_register = _register(raw["initial_register"], L, "initial_register")
    if "t_grid" in raw:
        cfg.t_grid = parse_grid(raw["t_grid"], "t_grid")
    if "tracked_registers" in raw:
        regs = raw["tracked_registers"]
        if not isinstance(regs, list):
            raise ConfigError("expected a list", "tracked_registers")
        cfg.tracked_registers = [_register(r, L, "tracked_registers") for r in regs]
    if "output_path" in raw:
        cfg.output_path = str(raw["output_path"])
    if "threads" in raw:
        cfg.threads = _integer(raw["threads"], "threads")
        if cfg.threads < 1:
            raise ConfigError("must be positive", "threads")
    _check_mode(cfg)
    return cfg


def _check_mode(cfg):
    need = {
        "sweep": ("delta_grid", "n_list"),
        "evolve": ("initial_register", "t_grid"),
        "compare": ("delta_grid",),
        "spectrum": ("n_list",),
        "oracle": (),
    }[cfg.mode]
    for attr in need:
        value = getattr(cfg, attr)
        if value is None or (isinstance(value, list) and not value):
            key = "N" if attr == "n_list" else attr
            raise ConfigError(f"required for mode {cfg.mode}", key)
    if cfg.mode == "evolve" and not cfg.tracked_registers:
        cfg.tracked_registers = [cfg.initial_register]
    if cfg.mode == "evolve":
        n = bin(cfg.initial_register).count("1")
        if any(bin(r).count("1") != n for r in cfg.tracked_registers):
            raise ConfigError("tracked registers must share the initial excitation count",
                              "tracked_registers")


def dump_config(cfg):
    """Normalised YAML text; ``parse_config(dump_config(c))`` reproduces ``c``."""
    chain = asdict(cfg.chain)
    out = {
        "format_version": FORMAT_VERSION,
        "mode": cfg.mode,
        "L": chain["L"],
        "J": float(chain["J"]),
        "Delta": float(chain["Delta"]),
        "epsilon": float(chain["epsilon"]),
        "d": float(chain["d"]),
        "defects": list(chain["defect_sites"]),
        "pair": list(cfg.pair),
    }
    if cfg.n_list:
        out["N"] = list(cfg.n_list)
    if cfg.delta_grid:
        out["delta_grid"] = list(cfg.delta_grid)
    if cfg.initial_register is not None:
        out["initial_register"] = register_label(cfg.initial_register)
    if cfg.t_grid:
        out["t_grid"] = list(cfg.t_grid)
    if cfg.tracked_registers:
        out["tracked_registers"] = [register_label(r) for r in cfg.tracked_registers]
    if cfg.output_path is not None:
        out["output_path"] = cfg.output_path
    if cfg.threads is not None:
        out["threads"] = cfg.threads
    return yaml.safe_dump(out, sort_keys=False, default_flow_style=None)


def load_config(path, mode=None):
    with open(path) as fh:
        return parse_config(fh.read(), mode)


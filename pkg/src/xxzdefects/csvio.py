"""CSV tables written by the command line tool.

Headers are fixed; reading a file whose header does not match is an error.
Floats use scientific notation with 12 significant digits.
"""
import csv

from .experiments import DynamicsRow, SweepRow

SWEEP_HEADER = ["delta", "L", "N", "defect_a", "defect_b", "c_max", "energy", "eig_index", "degenerate"]
DYNAMICS_HEADER = ["t", "register", "probability", "concurrence"]
COMPARE_HEADER = [
    "delta", "L", "numeric_c_max", "analytic_c_max", "max_energy_deviation", "ground_overlap",
]
SPECTRUM_HEADER = ["N", "index", "energy", "degenerate"]


class SchemaError(ValueError):
    pass


def fmt(x):
    return f"{float(x):.11e}"


def _write(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _read(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        found = next(reader, None)
        if found != header:
            raise SchemaError(f"{path}: expected header {header}, found {found}")
        return list(reader)


def write_sweep_csv(rows, path):
    _write(path, SWEEP_HEADER, (
        [fmt(r.delta), r.L, r.N, r.defect_a, r.defect_b, fmt(r.c_max), fmt(r.energy),
         r.eig_index, int(r.degenerate)]
        for r in rows
    ))


def read_sweep_csv(path):
    return [
        SweepRow(float(d), int(L), int(N), int(a), int(b), float(c), float(e), int(k), bool(int(g)))
        for d, L, N, a, b, c, e, k, g in _read(path, SWEEP_HEADER)
    ]


def write_dynamics_csv(rows, path):
    _write(path, DYNAMICS_HEADER, (
        [fmt(r.t), r.register, fmt(r.probability), fmt(r.concurrence)] for r in rows
    ))


def read_dynamics_csv(path):
    return [
        DynamicsRow(float(t), reg, float(p), float(c))
        for t, reg, p, c in _read(path, DYNAMICS_HEADER)
    ]


def write_compare_csv(rows, path):
    _write(path, COMPARE_HEADER, (
        [fmt(r.delta), r.L, fmt(r.numeric_c_max), fmt(r.analytic_c_max),
         fmt(r.max_energy_deviation), fmt(r.ground_overlap)]
        for r in rows
    ))


def write_spectrum_csv(spectra, path):
    _write(path, SPECTRUM_HEADER, (
        [N, k, fmt(e), int(flag)]
        for N, values, flags in spectra
        for k, (e, flag) in enumerate(zip(values, flags))
    ))

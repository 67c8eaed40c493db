//! Matplotlib scripts that redraw the figure CSVs.
//!
//! Columns are looked up by name, so the scripts survive column reordering.

use std::path::Path;

fn python_string(path: &Path) -> String {
    let s = path.to_string_lossy();
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

const HEADER: &str = "#!/usr/bin/env python3
import csv
import sys

import matplotlib.pyplot as plt

";

/// Script plotting `c_abs` against the normalized temperature, one panel per ratio.
pub fn figure1_script(data: &Path) -> String {
    format!(
        "{HEADER}DATA = {data}

with open(sys.argv[1] if len(sys.argv) > 1 else DATA, newline=\"\") as fh:
    rows = list(csv.DictReader(fh))

ratios = sorted({{r[\"chi_ratio\"] for r in rows}}, key=float)
fig, axes = plt.subplots(1, len(ratios), figsize=(4 * len(ratios), 3.5), squeeze=False)
for ax, ratio in zip(axes[0], ratios):
    for variant, style in ((\"proposed\", \"-\"), (\"traditional\", \":\")):
        sel = [r for r in rows if r[\"chi_ratio\"] == ratio and r[\"variant\"] == variant]
        ax.plot([float(r[\"theta\"]) for r in sel], [float(r[\"c_abs\"]) for r in sel], style, label=variant)
    ax.set_title(\"chi/omega21 = \" + ratio)
    ax.set_xlabel(\"theta / theta_cr\")
    ax.set_ylabel(\"|c|\")
    ax.set_xlim(0, 1.05)
    ax.legend()
fig.tight_layout()
plt.show()
",
        data = python_string(data)
    )
}

/// Script plotting both inversion columns against temperature for each model.
pub fn figure2_script(data: &Path) -> String {
    format!(
        "{HEADER}DATA = {data}

with open(sys.argv[1] if len(sys.argv) > 1 else DATA, newline=\"\") as fh:
    rows = list(csv.DictReader(fh))

fig, axes = plt.subplots(1, 2, figsize=(8, 3.5), sharey=True)
for ax, variant in zip(axes, (\"proposed\", \"traditional\")):
    sel = [r for r in rows if r[\"variant\"] == variant]
    theta = [float(r[\"theta\"]) for r in sel]
    ax.plot(theta, [float(r[\"rz_eq10\"]) for r in sel], \"-\", label=\"gap solution\")
    ax.plot(theta, [float(r[\"rz_eq4\"]) for r in sel], \":\", label=\"Hamiltonian minimum\")
    ax.set_title(variant)
    ax.set_xlabel(\"theta\")
    ax.legend()
axes[0].set_ylabel(\"<R_z>/N\")
fig.tight_layout()
plt.show()
",
        data = python_string(data)
    )
}

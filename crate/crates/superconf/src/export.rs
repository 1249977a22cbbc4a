//! Output formats: diagnostics CSV, 4D mesh JSON (with loader) and projected OBJ.
//!
//! The JSON mesh is the lossless record of a run. OBJ files carry a 3D
//! projection of it and are labeled as such in their header.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use superconf_core::construct::PhiSample;
use superconf_core::geometry;
use superconf_core::grid::Grid;
use superconf_core::math::{self, Vector};

use crate::config::Projection3;
use crate::CliError;

pub const CSV_HEADER: &str = "u,v,x0,x1,x2,x3,K,KN_abs,Hnorm,mu,res_orth,res_len,wintgen,a,flags";

/// Flag bit for a grid point where the pipeline raised a numerical error.
pub const FLAG_EVALUATION_FAILED: u8 = 8;

pub const MESH_FORMAT: &str = "superconf-mesh4";
pub const MESH_VERSION: u32 = 1;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// One CSV line: position, curvature data and flags of a `φ±` sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticRow {
    pub u: f64,
    pub v: f64,
    pub x: [f64; 4],
    pub k: f64,
    pub kn_abs: f64,
    pub h_norm: f64,
    pub mu: f64,
    pub res_orth: f64,
    pub res_len: f64,
    pub wintgen: f64,
    pub a: f64,
    pub flags: u8,
}

impl DiagnosticRow {
    pub fn from_sample(s: &PhiSample) -> Self {
        let nan = f64::NAN;
        let mut row = DiagnosticRow {
            u: s.u,
            v: s.v,
            x: s.phi.value(),
            k: nan,
            kn_abs: nan,
            h_norm: nan,
            mu: nan,
            res_orth: nan,
            res_len: nan,
            wintgen: nan,
            a: s.frame.a,
            flags: s.flags.bits(),
        };
        if let Some(fd) = &s.fd {
            let el = geometry::ellipse_descriptor(fd);
            let sc = geometry::superconformality_test(fd, superconf_core::construct::CIRCULARITY_TOL);
            row.k = fd.k;
            row.kn_abs = fd.kn.abs();
            row.h_norm = fd.lambda;
            row.mu = el.mu;
            row.res_orth = el.res_orth;
            row.res_len = el.res_len;
            row.wintgen = sc.wintgen_defect;
        }
        row
    }

    /// A point where evaluation failed: only the parameters are known.
    pub fn failed(u: f64, v: f64) -> Self {
        let nan = f64::NAN;
        DiagnosticRow {
            u,
            v,
            x: [nan; 4],
            k: nan,
            kn_abs: nan,
            h_norm: nan,
            mu: nan,
            res_orth: nan,
            res_len: nan,
            wintgen: nan,
            a: nan,
            flags: FLAG_EVALUATION_FAILED,
        }
    }

    pub fn position(&self) -> Option<[f64; 4]> {
        self.x.iter().all(|c| c.is_finite()).then_some(self.x)
    }

    /// `|K + |K_N| − ‖H‖²| / ‖H‖²`.
    pub fn relative_wintgen(&self) -> f64 {
        (self.wintgen / (self.h_norm * self.h_norm)).abs()
    }
}

pub fn csv_string(rows: &[DiagnosticRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.u, r.v, r.x[0], r.x[1], r.x[2], r.x[3], r.k, r.kn_abs, r.h_norm, r.mu, r.res_orth, r.res_len,
            r.wintgen, r.a,
        ];
        for f in fields {
            out.push_str(&fmt_f64(f));
            out.push(',');
        }
        let _ = writeln!(out, "{}", r.flags);
    }
    out
}

/// 4D quad mesh over a parameter grid; `None` marks a vertex that could not
/// be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh4 {
    pub format: String,
    pub version: u32,
    pub curve: String,
    pub sign: String,
    pub grid: [usize; 2],
    pub vertices: Vec<Option<[f64; 4]>>,
    pub quads: Vec<[usize; 4]>,
}

impl Mesh4 {
    pub fn from_rows(curve: &str, sign: &str, grid: &Grid, rows: &[DiagnosticRow]) -> Self {
        Mesh4 {
            format: MESH_FORMAT.to_string(),
            version: MESH_VERSION,
            curve: curve.to_string(),
            sign: sign.to_string(),
            grid: [grid.nu, grid.nv],
            vertices: rows.iter().map(DiagnosticRow::position).collect(),
            quads: grid.quads(),
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.format != MESH_FORMAT || self.version != MESH_VERSION {
            return Err(format!(
                "unsupported mesh format {} v{}",
                self.format, self.version
            ));
        }
        let n = self.vertices.len();
        if self.grid[0] * self.grid[1] != n {
            return Err(format!("grid {:?} does not match {n} vertices", self.grid));
        }
        if let Some(q) = self.quads.iter().find(|q| q.iter().any(|&i| i >= n)) {
            return Err(format!("quad {q:?} indexes past {n} vertices"));
        }
        Ok(())
    }
}

pub fn mesh_json(mesh: &Mesh4) -> String {
    let mut s = serde_json::to_string_pretty(mesh).expect("mesh serializes");
    s.push('\n');
    s
}

pub fn parse_mesh(text: &str) -> Result<Mesh4, CliError> {
    let mesh: Mesh4 =
        serde_json::from_str(text).map_err(|e| CliError::Format(format!("mesh JSON: {e}")))?;
    mesh.validate().map_err(CliError::Format)?;
    Ok(mesh)
}

pub fn load_mesh(path: &Path) -> Result<Mesh4, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_mesh(&text)
}

/// Projects a 4D point to 3D, `None` when the projection is undefined there.
pub fn project(p: &Vector<4>, proj: Projection3) -> Option<[f64; 3]> {
    match proj {
        Projection3::Drop { k } => {
            let mut out = [0.0; 3];
            let mut j = 0;
            for (i, x) in p.iter().enumerate() {
                if i != k {
                    out[j] = *x;
                    j += 1;
                }
            }
            Some(out)
        }
        Projection3::Stereo { pole } => {
            let rho = math::norm(&pole);
            let n = math::scale(1.0 / rho, &pole);
            let denom = rho - math::dot(p, &n);
            if denom.abs() < 1e-12 * rho {
                return None;
            }
            // Householder reflection taking n to e4, then drop the last coordinate.
            let w = math::sub(&n, &[0.0, 0.0, 0.0, 1.0]);
            let ww = math::dot(&w, &w);
            let q = if ww < 1e-30 {
                *p
            } else {
                math::sub(p, &math::scale(2.0 * math::dot(&w, p) / ww, &w))
            };
            let s = rho / denom;
            Some([s * q[0], s * q[1], s * q[2]])
        }
    }
}

/// OBJ text: projected vertices and each quad split into two triangles with
/// the quad's winding. Faces touching an unprojectable vertex are dropped.
pub fn obj_string(mesh: &Mesh4, proj: Projection3) -> String {
    let mut out = String::new();
    let label = match proj {
        Projection3::Drop { k } => format!("drop:{k}"),
        Projection3::Stereo { pole } => format!(
            "stereo from pole ({}, {}, {}, {})",
            fmt_f64(pole[0]),
            fmt_f64(pole[1]),
            fmt_f64(pole[2]),
            fmt_f64(pole[3])
        ),
    };
    let _ = writeln!(out, "# superconf OBJ: lossy 3D projection ({label}) of a 4D mesh");
    let _ = writeln!(out, "# curve {} sign {}; the JSON mesh holds the 4D data", mesh.curve, mesh.sign);
    let mut index = vec![0usize; mesh.vertices.len()];
    let mut next = 1;
    for (k, v) in mesh.vertices.iter().enumerate() {
        if let Some(q) = v.as_ref().and_then(|p| project(p, proj)) {
            let _ = writeln!(out, "v {} {} {}", fmt_f64(q[0]), fmt_f64(q[1]), fmt_f64(q[2]));
            index[k] = next;
            next += 1;
        }
    }
    for q in &mesh.quads {
        let [a, b, c, d] = q.map(|i| index[i]);
        if a == 0 || b == 0 || c == 0 || d == 0 {
            continue;
        }
        let _ = writeln!(out, "f {a} {b} {c}");
        let _ = writeln!(out, "f {a} {c} {d}");
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

//! Surface sampling and Wavefront OBJ output.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use flatfront_core::frontal::FrontEvaluator;
use flatfront_core::singularities::{SingularClass, SingularReport};
use flatfront_core::Vec3;

use crate::config::GridConfig;
use crate::error::{CliError, Result};

/// Samples `f(t_i, v_j)` on `t_i = 2πi/nt`, `v_j` uniform in `[vmin, vmax]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshGrid {
    pub nt: usize,
    pub nv: usize,
    pub vmin: f64,
    pub vmax: f64,
    pub wrap: bool,
    /// Row-major with `t` outer: vertex `(i, j)` is at `i * nv + j`.
    pub vertices: Vec<Vec3>,
    /// `ν̂(t_i)` for every vertex of row `i`.
    pub normals: Vec<Vec3>,
    /// Chains of points on the singular curve inside the `v` range.
    pub singular: Vec<Vec<Vec3>>,
}

impl MeshGrid {
    pub fn t(&self, i: usize) -> f64 {
        std::f64::consts::TAU * i as f64 / self.nt as f64
    }

    pub fn v(&self, j: usize) -> f64 {
        self.vmin + (self.vmax - self.vmin) * j as f64 / (self.nv - 1) as f64
    }

    pub fn vertex(&self, i: usize, j: usize) -> Vec3 {
        self.vertices[i * self.nv + j]
    }

    /// Triangles as 0-based vertex indices, two per quad in `(i, j)` order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let rows = if self.wrap { self.nt } else { self.nt - 1 };
        let mut tris = Vec::with_capacity(2 * rows * (self.nv - 1));
        for i in 0..rows {
            let i1 = (i + 1) % self.nt;
            for j in 0..self.nv - 1 {
                let a = i * self.nv + j;
                let b = i1 * self.nv + j;
                let c = i1 * self.nv + j + 1;
                let d = i * self.nv + j + 1;
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            }
        }
        tris
    }
}

pub fn build_mesh(front: &FrontEvaluator, grid: &GridConfig, locus: Option<&SingularReport>) -> Result<MeshGrid> {
    let mut m = MeshGrid {
        nt: grid.nt,
        nv: grid.nv,
        vmin: grid.vmin,
        vmax: grid.vmax,
        wrap: grid.wrap,
        vertices: Vec::with_capacity(grid.nt * grid.nv),
        normals: Vec::with_capacity(grid.nt * grid.nv),
        singular: Vec::new(),
    };
    for i in 0..m.nt {
        let t = m.t(i);
        let n = front.normal(t);
        for j in 0..m.nv {
            let p = front.f(t, m.v(j));
            if !p.is_finite() {
                return Err(CliError::NonFiniteVertex { i, j });
            }
            m.vertices.push(p);
            m.normals.push(n);
        }
    }
    if let Some(r) = locus {
        m.singular = singular_chains(front, r, m.vmin, m.vmax);
    }
    Ok(m)
}

/// Splits the singular samples into chains of consecutive in-range points.
fn singular_chains(front: &FrontEvaluator, r: &SingularReport, vmin: f64, vmax: f64) -> Vec<Vec<Vec3>> {
    let n = r.samples.len();
    if n == 0 {
        return Vec::new();
    }
    let gap = 1.5 * r.samples.windows(2).map(|w| w[1].t - w[0].t).fold(0.0, f64::max).min(0.1);
    let mut chains: Vec<Vec<Vec3>> = Vec::new();
    let mut current: Vec<Vec3> = Vec::new();
    let mut last_t = f64::NEG_INFINITY;
    for s in &r.samples {
        let usable = s.class != SingularClass::WholeRulingSingular && s.v >= vmin && s.v <= vmax;
        if !usable || s.t - last_t > gap {
            if current.len() > 1 {
                chains.push(std::mem::take(&mut current));
            }
            current.clear();
        }
        if usable {
            current.push(front.f(s.t, s.v));
            last_t = s.t;
        }
    }
    if current.len() > 1 {
        chains.push(current);
    }
    chains.retain(|c| c.iter().all(|p| p.is_finite()));
    chains
}

/// `%g`-style rendering with 9 significant digits.
pub fn format_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn write_v(out: &mut String, tag: &str, p: Vec3) {
    let _ = writeln!(out, "{tag} {} {} {}", format_g9(p.x), format_g9(p.y), format_g9(p.z));
}

/// OBJ text: vertices, normals, triangles, then singular chains as `l`
/// elements. Chain points that coincide exactly with an emitted vertex reuse
/// it; chains that collapse to a single point are dropped.
pub fn obj_string(mesh: &MeshGrid) -> String {
    let mut out = String::new();
    out.push_str("# flatfront surface mesh\n");
    let _ = writeln!(out, "# nt {} nv {} v [{}, {}]", mesh.nt, mesh.nv, format_g9(mesh.vmin), format_g9(mesh.vmax));
    let key = |p: Vec3| (p.x.to_bits(), p.y.to_bits(), p.z.to_bits());
    let mut index: HashMap<(u64, u64, u64), usize> = HashMap::new();
    for (k, &p) in mesh.vertices.iter().enumerate() {
        write_v(&mut out, "v", p);
        index.entry(key(p)).or_insert(k + 1);
    }
    let mut next = mesh.vertices.len() + 1;
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut extra = String::new();
    for chain in &mesh.singular {
        let mut ids: Vec<usize> = Vec::with_capacity(chain.len());
        for &p in chain {
            let id = *index.entry(key(p)).or_insert_with(|| {
                write_v(&mut extra, "v", p);
                next += 1;
                next - 1
            });
            if ids.last() != Some(&id) {
                ids.push(id);
            }
        }
        if ids.len() > 1 {
            chains.push(ids);
        }
    }
    out.push_str(&extra);
    for &n in &mesh.normals {
        write_v(&mut out, "vn", n);
    }
    for [a, b, c] in mesh.triangles() {
        let _ = writeln!(out, "f {0}//{0} {1}//{1} {2}//{2}", a + 1, b + 1, c + 1);
    }
    for ids in chains {
        out.push('l');
        for id in ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}

pub fn export_obj(mesh: &MeshGrid, path: &Path) -> Result<()> {
    std::fs::write(path, obj_string(mesh)).map_err(|e| CliError::io(path, e))
}

//! Evaluation of the solution on a `(t, x)` grid.

use std::io::Write;
use std::path::Path;

use image::{Rgb, RgbImage};
use lepage_core::noise::additive_solution;
use lepage_core::{AtomCloud, Chain, Mode};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::Result;

/// `u` on the grid, stored with `t` as the outer index. In dimension `d > 1`
/// the grid runs along the first coordinate with the others at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / last })
        .collect()
}

impl Field {
    pub fn value(&self, ti: usize, xi: usize) -> f64 {
        self.u[ti * self.x.len() + xi]
    }

    /// CSV with header `t,x,u`, one row per node, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,x,u")?;
        for (ti, t) in self.t.iter().enumerate() {
            for (xi, x) in self.x.iter().enumerate() {
                writeln!(out, "{t:.16e},{x:.16e},{:.16e}", self.value(ti, xi))?;
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Heatmap with `x` to the right and `t` upwards, on a blue-white-red
    /// scale centred at `u = 1`. The colour range is the 99th percentile of
    /// `|u - 1|` so that a few huge jumps do not wash out the picture.
    pub fn render_png(&self, path: &Path) -> Result<()> {
        let mut dev: Vec<f64> = self.u.iter().filter(|v| v.is_finite()).map(|v| (v - 1.0).abs()).collect();
        dev.sort_by(f64::total_cmp);
        let scale = dev
            .get(((dev.len() as f64 * 0.99) as usize).min(dev.len().saturating_sub(1)))
            .copied()
            .filter(|s| *s > 0.0)
            .unwrap_or(1.0);
        let (w, h) = (self.x.len() as u32, self.t.len() as u32);
        let img = RgbImage::from_fn(w, h, |col, row| {
            let ti = (h - 1 - row) as usize;
            let s = ((self.value(ti, col as usize) - 1.0) / scale).clamp(-1.0, 1.0);
            let s = if s.is_nan() { 0.0 } else { s };
            let fade = (255.0 * (1.0 - s.abs())).round() as u8;
            if s < 0.0 {
                Rgb([fade, fade, 255])
            } else {
                Rgb([255, fade, fade])
            }
        });
        img.save(path)?;
        Ok(())
    }
}

/// Samples the cloud of `cfg` and evaluates the field on its grid.
pub fn run_field(cfg: &RunConfig) -> Result<Field> {
    cfg.validate()?;
    let cloud = AtomCloud::sample(cfg.atoms, cfg.seed, cfg.params()?, cfg.weight()?);
    field_from_cloud(cfg, &cloud)
}

/// Evaluates the field of `cfg` over a given cloud. Nodes are computed in
/// parallel and collected in grid order.
pub fn field_from_cloud(cfg: &RunConfig, cloud: &AtomCloud<f64>) -> Result<Field> {
    let kernel = cfg.kernel()?;
    let t = linspace(0.0, cfg.horizon, cfg.grid.t_points);
    let x = linspace(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.x_points);
    let nodes: Vec<(f64, Vec<f64>)> = t
        .iter()
        .flat_map(|&ti| {
            x.iter().map(move |&xi| {
                let mut p = vec![0.0; cfg.dim];
                p[0] = xi;
                (ti, p)
            })
        })
        .collect();
    let u = match cfg.mode {
        Mode::Additive => nodes
            .par_iter()
            .map(|(ti, p)| additive_solution(cloud, &kernel, *ti, p))
            .collect::<lepage_core::Result<Vec<f64>>>()?,
        Mode::Multiplicative => Chain::build(cloud, kernel, cfg.chaos().effective_order())?.evaluate_many(&nodes),
    };
    Ok(Field { t, x, u })
}

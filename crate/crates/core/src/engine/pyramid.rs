//! Tile layers and the radix-`d` butterfly that climbs the scale pyramid.
//!
//! A layer at scale `n` holds one SU(1,1) value per tile `I × ω` with
//! `|I| = d^n`, `|ω| = d^(-n)`, inside `[0, d^N_x) × [0, d^N_ξ)`. The value is
//! `G_I(ξ_ω)` at the left endpoint of `ω`. Merging `d` adjacent columns and
//! splitting every row into `d` sub-rows is exact: sub-row `k` of the merged
//! column is the ascending product over the old columns `j` with `b` rotated
//! by `exp(2πi·jk/d)`.

use rayon::prelude::*;

use crate::cantor::{upow, DadicInterval, Tile, Twiddles};
use crate::error::{invalid, Result};
use crate::su11::{cell_transfer, Su11Element};

use super::StepFunction;

/// Below this many output tiles a step runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 12;

/// All tile values of one scale, stored column-major: tile `(column, row)`
/// lives at `column * rows + row`.
#[derive(Debug, Clone, PartialEq)]
pub struct TileLayer {
    d: u32,
    scale: i32,
    columns: usize,
    rows: usize,
    matrices: Vec<Su11Element>,
}

impl TileLayer {
    pub fn radix(&self) -> u32 {
        self.d
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn matrices(&self) -> &[Su11Element] {
        &self.matrices
    }

    pub fn get(&self, column: usize, row: usize) -> &Su11Element {
        &self.matrices[column * self.rows + row]
    }

    /// Tile values of one column, ascending in frequency.
    pub fn column(&self, column: usize) -> &[Su11Element] {
        &self.matrices[column * self.rows..(column + 1) * self.rows]
    }

    pub fn tile(&self, column: usize, row: usize) -> Tile {
        let time = DadicInterval::new(self.d, self.scale, column as u64).expect("tile in range");
        let freq = DadicInterval::new(self.d, -self.scale, row as u64).expect("tile in range");
        Tile::new(time, freq).expect("unit area by construction")
    }

    /// Largest `| |a|² - |b|² - 1 |` over the layer.
    pub fn max_residual(&self) -> f64 {
        self.matrices.iter().map(|g| g.residual().abs()).fold(0.0, f64::max)
    }

    /// Largest group drift relative to `|a|²`.
    pub fn max_relative_residual(&self) -> f64 {
        self.matrices
            .iter()
            .map(|g| g.residual().abs() / g.a.norm_sqr().max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Base layer at scale `-N_ξ`: one row (`ω = [0, d^N_ξ)`, where `E_d ≡ 1`)
/// and one column per cell of width `d^(-N_ξ)`.
pub fn build_base_layer(f: &StepFunction, freq_exponent: u32) -> Result<TileLayer> {
    let values = f.resample(freq_exponent)?;
    let h = (f.radix() as f64).powi(-(freq_exponent as i32));
    let matrices = values
        .iter()
        .map(|&w| cell_transfer(w, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(TileLayer {
        d: f.radix(),
        scale: -(freq_exponent as i32),
        columns: matrices.len(),
        rows: 1,
        matrices,
    })
}

/// Base layer for a window narrower than the function's resolution
/// (`N_ξ < M`). Each base cell of width `d^(-N_ξ)` holds the ordered product
/// of the `d^(M-N_ξ)` finer cells inside it; the character is constant on the
/// base cell, so the butterfly stays exact. For `N_ξ ≥ M` this is
/// [`build_base_layer`].
pub fn build_window_base_layer(f: &StepFunction, freq_exponent: u32) -> Result<TileLayer> {
    if freq_exponent >= f.cell_exponent() {
        return build_base_layer(f, freq_exponent);
    }
    let block = upow(f.radix(), f.cell_exponent() - freq_exponent);
    let h = f.cell_width();
    let matrices = f
        .values()
        .chunks(block)
        .map(|cells| {
            cells.iter().try_fold(Su11Element::IDENTITY, |acc, &w| {
                Ok(acc.compose(&cell_transfer(w, h)?))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TileLayer {
        d: f.radix(),
        scale: -(freq_exponent as i32),
        columns: matrices.len(),
        rows: 1,
        matrices,
    })
}

fn merge_column(
    input: &TileLayer,
    out_column: usize,
    twiddles: &Twiddles,
    out: &mut [Su11Element],
) {
    let d = input.d as usize;
    for row in 0..input.rows {
        for k in 0..d {
            let mut acc = Su11Element::IDENTITY;
            for j in 0..d {
                let p = input.get(out_column * d + j, row);
                acc = acc.compose(&p.rotate_b(twiddles.phase(j, k)));
            }
            out[row * d + k] = acc;
        }
    }
}

/// One scale step `n → n+1`.
pub fn butterfly_step(layer: &TileLayer) -> Result<TileLayer> {
    butterfly_step_with(layer, &Twiddles::new(layer.d))
}

pub fn butterfly_step_with(layer: &TileLayer, twiddles: &Twiddles) -> Result<TileLayer> {
    let d = layer.d as usize;
    if twiddles.radix() != layer.d {
        return Err(invalid("twiddle table radix does not match the layer"));
    }
    if layer.columns < d || !layer.columns.is_multiple_of(d) {
        return Err(invalid(format!(
            "cannot merge {} columns in groups of {d}",
            layer.columns
        )));
    }
    let columns = layer.columns / d;
    let rows = layer.rows * d;
    let mut matrices = vec![Su11Element::IDENTITY; columns * rows];
    if matrices.len() >= PARALLEL_THRESHOLD {
        matrices
            .par_chunks_mut(rows)
            .enumerate()
            .for_each(|(c, out)| merge_column(layer, c, twiddles, out));
    } else {
        for (c, out) in matrices.chunks_mut(rows).enumerate() {
            merge_column(layer, c, twiddles, out);
        }
    }
    Ok(TileLayer {
        d: layer.d,
        scale: layer.scale + 1,
        columns,
        rows,
        matrices,
    })
}

/// Every layer from scale `-N_ξ` up to `N_x`.
#[derive(Debug, Clone)]
pub struct TilePyramid {
    d: u32,
    support_exponent: u32,
    freq_exponent: u32,
    layers: Vec<TileLayer>,
}

impl TilePyramid {
    pub fn radix(&self) -> u32 {
        self.d
    }

    pub fn support_exponent(&self) -> u32 {
        self.support_exponent
    }

    pub fn freq_exponent(&self) -> u32 {
        self.freq_exponent
    }

    /// Layers ordered by increasing scale.
    pub fn layers(&self) -> &[TileLayer] {
        &self.layers
    }

    pub fn layer(&self, scale: i32) -> Option<&TileLayer> {
        let idx = scale + self.freq_exponent as i32;
        usize::try_from(idx).ok().and_then(|i| self.layers.get(i))
    }

    pub fn base(&self) -> &TileLayer {
        &self.layers[0]
    }

    /// The single-column layer at scale `N_x`; row `k` is `G(k·d^(-N_x))`.
    pub fn top(&self) -> &TileLayer {
        self.layers.last().expect("pyramid has at least one layer")
    }

    pub fn max_relative_residual(&self) -> f64 {
        self.layers
            .iter()
            .map(TileLayer::max_relative_residual)
            .fold(0.0, f64::max)
    }
}

/// Full scale pyramid of `f` on the frequency window `[0, d^N_ξ)`.
pub fn transform(f: &StepFunction, freq_exponent: u32) -> Result<TilePyramid> {
    let twiddles = Twiddles::new(f.radix());
    let mut layers = vec![build_base_layer(f, freq_exponent)?];
    for _ in 0..f.support_exponent() + freq_exponent {
        let next = butterfly_step_with(layers.last().unwrap(), &twiddles)?;
        layers.push(next);
    }
    Ok(TilePyramid {
        d: f.radix(),
        support_exponent: f.support_exponent(),
        freq_exponent,
        layers,
    })
}

/// Top layer only, keeping a single layer in memory at a time.
pub fn transform_top(f: &StepFunction, freq_exponent: u32) -> Result<TileLayer> {
    let twiddles = Twiddles::new(f.radix());
    let mut layer = build_base_layer(f, freq_exponent)?;
    for _ in 0..f.support_exponent() + freq_exponent {
        layer = butterfly_step_with(&layer, &twiddles)?;
    }
    debug_assert_eq!(layer.rows, upow(f.radix(), f.support_exponent() + freq_exponent));
    Ok(layer)
}

/// Top layer on `[0, d^N_ξ)` for any `N_ξ`, including windows narrower than
/// the resolution of `f`.
pub fn transform_top_window(f: &StepFunction, freq_exponent: u32) -> Result<TileLayer> {
    let twiddles = Twiddles::new(f.radix());
    let mut layer = build_window_base_layer(f, freq_exponent)?;
    for _ in 0..f.support_exponent() + freq_exponent {
        layer = butterfly_step_with(&layer, &twiddles)?;
    }
    Ok(layer)
}

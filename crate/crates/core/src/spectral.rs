//! Doubly periodic grid construction, forward/inverse Fourier transforms,
//! and application of diagonal spectral multipliers.
//!
//! Conventions
//! -----------
//! * The domain is `x ∈ [-π L_x, π L_x)`, `y ∈ [-π L_y, π L_y)` with `N_x ×
//!   N_y` uniform nodes (both powers of two). Arrays are shaped `(N_x, N_y)`
//!   with the `y` index contiguous.
//! * Wavenumbers are `ξ₁ = j / L_x` for integer `j ∈ {-N_x/2, …, N_x/2 - 1}`
//!   (and `ξ₂ = k / L_y` analogously), stored in FFT order: `0, 1/L, …,
//!   (N/2-1)/L, -N/2/L, …, -1/L`.
//! * Spectral coefficients are the discrete Fourier transform over node
//!   indices divided by `N_x N_y`, so the `(0,0)` coefficient is the grid
//!   mean and Parseval reads `Σ u² ΔxΔy = (2π L_x)(2π L_y) Σ |û|²`.
//!   Coefficient phases are therefore relative to the domain corner rather
//!   than to `x = 0`; diagonal multipliers, translations and all norms are
//!   unaffected by this choice.
//! * Odd-symbol multipliers (`iξ₁`, `iξ₂`) are zeroed on their Nyquist line
//!   so that derivatives of real fields stay real. Even symbols built from
//!   them (e.g. `-ξ₁²`) are defined as pointwise squares of the odd ones,
//!   which makes composition identities exact including the Nyquist line.

use std::sync::Arc;

use ndarray::Array2;
use rustfft::{num_complex::Complex64, Fft, FftPlanner};

use crate::error::{KpError, Result};
use crate::util::par_enabled;

/// Grid geometry plus cached FFT plans. Immutable after construction and
/// safely shareable across threads; transforms on distinct fields may run
/// concurrently.
pub struct SpectralGrid {
    pub l_x: f64,
    pub l_y: f64,
    pub n_x: usize,
    pub n_y: usize,
    pub x_nodes: Vec<f64>,
    pub y_nodes: Vec<f64>,
    /// FFT-ordered `ξ₁` values (`j / L_x`).
    pub xi1: Vec<f64>,
    /// FFT-ordered `ξ₂` values (`k / L_y`).
    pub xi2: Vec<f64>,
    fft: Fft2,
}

impl std::fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("l_x", &self.l_x)
            .field("l_y", &self.l_y)
            .field("n_x", &self.n_x)
            .field("n_y", &self.n_y)
            .finish()
    }
}

/// Construct a grid. `N_x`, `N_y` must be powers of two (≥ 2) and the domain
/// scales positive.
pub fn make_grid(l_x: f64, l_y: f64, n_x: usize, n_y: usize) -> Result<Arc<SpectralGrid>> {
    for (name, n) in [("N_x", n_x), ("N_y", n_y)] {
        if n < 2 || !n.is_power_of_two() {
            return Err(KpError::config(format!(
                "{name} must be a power of two >= 2, got {n}"
            )));
        }
    }
    for (name, l) in [("L_x", l_x), ("L_y", l_y)] {
        if !(l > 0.0) || !l.is_finite() {
            return Err(KpError::config(format!("{name} must be positive, got {l}")));
        }
    }

    let nodes = |l: f64, n: usize| -> Vec<f64> {
        let h = 2.0 * std::f64::consts::PI * l / n as f64;
        (0..n)
            .map(|i| -std::f64::consts::PI * l + i as f64 * h)
            .collect()
    };
    let waves = |l: f64, n: usize| -> Vec<f64> {
        (0..n).map(|j| signed_index(j, n) as f64 / l).collect()
    };

    let mut planner = FftPlanner::new();
    let fft = Fft2 {
        fwd_x: planner.plan_fft_forward(n_x),
        inv_x: planner.plan_fft_inverse(n_x),
        fwd_y: planner.plan_fft_forward(n_y),
        inv_y: planner.plan_fft_inverse(n_y),
    };

    Ok(Arc::new(SpectralGrid {
        l_x,
        l_y,
        n_x,
        n_y,
        x_nodes: nodes(l_x, n_x),
        y_nodes: nodes(l_y, n_y),
        xi1: waves(l_x, n_x),
        xi2: waves(l_y, n_y),
        fft,
    }))
}

/// Signed integer wavenumber for FFT-ordered index `j` of an `n`-point grid.
pub fn signed_index(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

impl SpectralGrid {
    /// Area of one grid cell, `Δx Δy`.
    pub fn cell_area(&self) -> f64 {
        let dx = 2.0 * std::f64::consts::PI * self.l_x / self.n_x as f64;
        let dy = 2.0 * std::f64::consts::PI * self.l_y / self.n_y as f64;
        dx * dy
    }

    /// Total domain area `(2π L_x)(2π L_y)`; also the Parseval factor
    /// between `Σ|û|²` and `Σ u² ΔxΔy`.
    pub fn area(&self) -> f64 {
        let tau = 2.0 * std::f64::consts::PI;
        (tau * self.l_x) * (tau * self.l_y)
    }

    /// Index of the `ξ₁` Nyquist row (`j = -N_x/2`).
    pub fn nyquist_x(&self) -> usize {
        self.n_x / 2
    }

    /// Index of the `ξ₂` Nyquist column (`k = -N_y/2`).
    pub fn nyquist_y(&self) -> usize {
        self.n_y / 2
    }

    pub(crate) fn workspace(&self) -> Workspace {
        let scratch = [
            self.fft.fwd_x.get_inplace_scratch_len(),
            self.fft.inv_x.get_inplace_scratch_len(),
            self.fft.fwd_y.get_inplace_scratch_len(),
            self.fft.inv_y.get_inplace_scratch_len(),
        ]
        .into_iter()
        .max()
        .unwrap();
        Workspace {
            row_scratch: vec![Complex64::new(0.0, 0.0); scratch],
            tpose: Array2::zeros((self.n_y, self.n_x)),
        }
    }

    /// In-place forward transform, normalized by `1/(N_x N_y)`.
    pub(crate) fn fft2_forward(&self, a: &mut Array2<Complex64>, ws: &mut Workspace) {
        run_rows(self.fft.fwd_y.as_ref(), slice_mut(a), &mut ws.row_scratch);
        ws.tpose.assign(&a.t());
        run_rows(
            self.fft.fwd_x.as_ref(),
            slice_mut(&mut ws.tpose),
            &mut ws.row_scratch,
        );
        a.assign(&ws.tpose.t());
        let scale = 1.0 / (self.n_x as f64 * self.n_y as f64);
        for v in a.iter_mut() {
            *v *= scale;
        }
    }

    /// In-place inverse transform (unnormalized; pairs with `fft2_forward`).
    pub(crate) fn fft2_inverse(&self, a: &mut Array2<Complex64>, ws: &mut Workspace) {
        run_rows(self.fft.inv_y.as_ref(), slice_mut(a), &mut ws.row_scratch);
        ws.tpose.assign(&a.t());
        run_rows(
            self.fft.inv_x.as_ref(),
            slice_mut(&mut ws.tpose),
            &mut ws.row_scratch,
        );
        a.assign(&ws.tpose.t());
    }

    /// Multiplier `iξ₁` with the `ξ₁` Nyquist row zeroed.
    pub fn dx_multiplier(&self) -> Array2<Complex64> {
        let mut m = Array2::zeros((self.n_x, self.n_y));
        for (i, row) in m.outer_iter_mut().enumerate() {
            let v = if i == self.nyquist_x() {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, self.xi1[i])
            };
            for e in row {
                *e = v;
            }
        }
        m
    }

    /// Multiplier `iξ₂` with the `ξ₂` Nyquist column zeroed.
    pub fn dy_multiplier(&self) -> Array2<Complex64> {
        let mut m = Array2::zeros((self.n_x, self.n_y));
        for mut row in m.outer_iter_mut() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = if j == self.nyquist_y() {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, self.xi2[j])
                };
            }
        }
        m
    }

    /// Multiplier `-ξ₁²`, defined as the pointwise square of
    /// [`dx_multiplier`] so that applying `iξ₁` twice and applying `-ξ₁²`
    /// once agree exactly, Nyquist line included.
    pub fn dxx_multiplier(&self) -> Array2<Complex64> {
        let mut m = self.dx_multiplier();
        m.mapv_inplace(|v| v * v);
        m
    }

    /// Multiplier `-ξ₂²` (square of [`dy_multiplier`]).
    pub fn dyy_multiplier(&self) -> Array2<Complex64> {
        let mut m = self.dy_multiplier();
        m.mapv_inplace(|v| v * v);
        m
    }
}

struct Fft2 {
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
}

/// Reusable transform scratch (one per stepping loop / call site).
pub(crate) struct Workspace {
    row_scratch: Vec<Complex64>,
    tpose: Array2<Complex64>,
}

fn slice_mut(a: &mut Array2<Complex64>) -> &mut [Complex64] {
    a.as_slice_mut()
        .expect("spectral arrays are owned and contiguous")
}

fn run_rows(fft: &dyn Fft<f64>, buf: &mut [Complex64], scratch: &mut Vec<Complex64>) {
    let len = fft.len();
    if par_enabled() {
        use rayon::prelude::*;
        let need = fft.get_inplace_scratch_len();
        buf.par_chunks_exact_mut(len).for_each_init(
            || vec![Complex64::new(0.0, 0.0); need],
            |scr, chunk| fft.process_with_scratch(chunk, scr),
        );
    } else {
        let need = fft.get_inplace_scratch_len();
        if scratch.len() < need {
            scratch.resize(need, Complex64::new(0.0, 0.0));
        }
        for chunk in buf.chunks_exact_mut(len) {
            fft.process_with_scratch(chunk, &mut scratch[..need]);
        }
    }
}

/// Which representations a [`Field`] currently caches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Physical,
    Spectral,
    Both,
}

/// A scalar field on a [`SpectralGrid`], carrying a physical (real values at
/// nodes) and/or spectral (complex coefficients) representation. When both
/// caches are present they describe the same field.
#[derive(Clone)]
pub struct Field {
    grid: Arc<SpectralGrid>,
    physical: Option<Array2<f64>>,
    spectral: Option<Array2<Complex64>>,
}

impl Field {
    pub fn from_physical(grid: Arc<SpectralGrid>, values: Array2<f64>) -> Result<Self> {
        check_shape(&grid, values.dim())?;
        Ok(Field {
            grid,
            physical: Some(values),
            spectral: None,
        })
    }

    pub fn from_spectral(grid: Arc<SpectralGrid>, coeffs: Array2<Complex64>) -> Result<Self> {
        check_shape(&grid, coeffs.dim())?;
        Ok(Field {
            grid,
            physical: None,
            spectral: Some(coeffs),
        })
    }

    pub fn zeros(grid: Arc<SpectralGrid>) -> Self {
        let shape = (grid.n_x, grid.n_y);
        Field {
            grid,
            physical: Some(Array2::zeros(shape)),
            spectral: Some(Array2::zeros(shape)),
        }
    }

    pub fn grid(&self) -> &Arc<SpectralGrid> {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        match (&self.physical, &self.spectral) {
            (Some(_), Some(_)) => Representation::Both,
            (Some(_), None) => Representation::Physical,
            (None, Some(_)) => Representation::Spectral,
            (None, None) => unreachable!("fields always carry a representation"),
        }
    }

    /// Populate the spectral cache (returns a field carrying both
    /// representations). Errors on non-finite physical values, which is how
    /// overflowing solutions surface when diagnostics transform them.
    pub fn to_spectral(&self) -> Result<Field> {
        if self.spectral.is_some() {
            return Ok(self.clone());
        }
        let phys = self.physical.as_ref().expect("no representation");
        if !phys.iter().all(|v| v.is_finite()) {
            return Err(KpError::NonFinite("physical field values".into()));
        }
        let mut buf = Array2::from_shape_fn(phys.dim(), |ix| Complex64::new(phys[ix], 0.0));
        let mut ws = self.grid.workspace();
        self.grid.fft2_forward(&mut buf, &mut ws);
        Ok(Field {
            grid: self.grid.clone(),
            physical: self.physical.clone(),
            spectral: Some(buf),
        })
    }

    /// Populate the physical cache. The imaginary part of the inverse
    /// transform is discarded; for Hermitian-symmetric coefficients it is at
    /// rounding level.
    pub fn to_physical(&self) -> Result<Field> {
        if self.physical.is_some() {
            return Ok(self.clone());
        }
        let spec = self.spectral.as_ref().expect("no representation");
        let mut buf = spec.clone();
        let mut ws = self.grid.workspace();
        self.grid.fft2_inverse(&mut buf, &mut ws);
        let phys = buf.mapv(|v| v.re);
        Ok(Field {
            grid: self.grid.clone(),
            physical: Some(phys),
            spectral: self.spectral.clone(),
        })
    }

    /// Pointwise product with a diagonal multiplier in spectral space. The
    /// result is tagged spectral-only (its physical cache is invalidated).
    pub fn apply_multiplier(&self, m: &Array2<Complex64>) -> Result<Field> {
        let spec = self.spectral_or_err()?;
        if m.dim() != spec.dim() {
            return Err(KpError::ShapeMismatch {
                expected: spec.dim(),
                got: m.dim(),
            });
        }
        let out = spec * m;
        Ok(Field {
            grid: self.grid.clone(),
            physical: None,
            spectral: Some(out),
        })
    }

    pub fn physical(&self) -> Option<&Array2<f64>> {
        self.physical.as_ref()
    }

    pub fn spectral(&self) -> Option<&Array2<Complex64>> {
        self.spectral.as_ref()
    }

    pub(crate) fn spectral_or_err(&self) -> Result<&Array2<Complex64>> {
        self.spectral
            .as_ref()
            .ok_or_else(|| KpError::config("operation requires the spectral representation"))
    }

    pub(crate) fn physical_or_err(&self) -> Result<&Array2<f64>> {
        self.physical
            .as_ref()
            .ok_or_else(|| KpError::config("operation requires the physical representation"))
    }

    /// Physical values, computing them if only the spectral cache is held.
    pub fn physical_values(&self) -> Result<Array2<f64>> {
        match &self.physical {
            Some(p) => Ok(p.clone()),
            None => Ok(self
                .to_physical()?
                .physical
                .expect("to_physical populates the cache")),
        }
    }

    /// Spectral coefficients, computing them if needed.
    pub fn spectral_values(&self) -> Result<Array2<Complex64>> {
        match &self.spectral {
            Some(s) => Ok(s.clone()),
            None => Ok(self
                .to_spectral()?
                .spectral
                .expect("to_spectral populates the cache")),
        }
    }
}

fn check_shape(grid: &SpectralGrid, got: (usize, usize)) -> Result<()> {
    let expected = (grid.n_x, grid.n_y);
    if got != expected {
        return Err(KpError::ShapeMismatch { expected, got });
    }
    Ok(())
}

/// Translate a field by `s` in `x`: `output(x, y) = input(x - s, y)` via the
/// spectral phase `e^{-i ξ₁ s}`. The Nyquist row is multiplied by the real
/// factor `cos(ξ₁ s)` (its sine partner is not representable on the grid),
/// which keeps real fields real and is exact for pure-cosine Nyquist content.
pub fn translate_x(f: &Field, s: f64) -> Result<Field> {
    let f = f.to_spectral()?;
    let grid = f.grid().clone();
    let spec = f.spectral_or_err()?;
    let mut out = spec.clone();
    for (i, mut row) in out.outer_iter_mut().enumerate() {
        let xi = grid.xi1[i];
        let factor = if i == grid.nyquist_x() {
            Complex64::new((xi * s).cos(), 0.0)
        } else {
            Complex64::new(0.0, -xi * s).exp()
        };
        for v in row.iter_mut() {
            *v *= factor;
        }
    }
    Field::from_spectral(grid, out)
}

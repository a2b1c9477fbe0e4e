use std::f64::consts::PI;
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::FourierError;

/// Window applied to samples before transforming non-decaying signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Taper {
    None,
    /// Parzen (de la Vallée Poussin) window, equal to 1 at the grid center.
    Parzen,
}

/// Real samples on a regular 1-D or 2-D grid starting at `-(n/2)·dx` per axis.
///
/// 2-D samples are row-major: axis 0 indexes rows.
#[derive(Debug, Clone)]
pub struct SpectralSignal {
    grid: Vec<usize>,
    spacing: Vec<f64>,
    samples: Vec<f64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl SpectralSignal {
    pub fn new(grid: Vec<usize>, spacing: Vec<f64>, samples: Vec<f64>) -> Result<Self, FourierError> {
        if grid.is_empty() || grid.len() > 2 || spacing.len() != grid.len() {
            return Err(FourierError::InvalidArgument(format!(
                "grid {grid:?} with spacing {spacing:?}"
            )));
        }
        if grid.iter().any(|&n| n == 0) || spacing.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
            return Err(FourierError::InvalidArgument("empty axis or nonpositive spacing".into()));
        }
        let total: usize = grid.iter().product();
        if samples.len() != total {
            return Err(FourierError::InvalidArgument(format!(
                "expected {total} samples, found {}",
                samples.len()
            )));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(FourierError::InvalidArgument("non-finite sample".into()));
        }
        Ok(Self {
            grid,
            spacing,
            samples,
            spectrum: OnceLock::new(),
        })
    }

    pub fn from_fn_1d(n: usize, dx: f64, f: impl Fn(f64) -> f64) -> Result<Self, FourierError> {
        let x0 = -((n / 2) as f64) * dx;
        Self::new(vec![n], vec![dx], (0..n).map(|i| f(x0 + i as f64 * dx)).collect())
    }

    pub fn from_fn_2d(n: [usize; 2], d: [f64; 2], f: impl Fn(f64, f64) -> f64) -> Result<Self, FourierError> {
        let x0 = -((n[0] / 2) as f64) * d[0];
        let y0 = -((n[1] / 2) as f64) * d[1];
        let mut samples = Vec::with_capacity(n[0] * n[1]);
        for i in 0..n[0] {
            for j in 0..n[1] {
                samples.push(f(x0 + i as f64 * d[0], y0 + j as f64 * d[1]));
            }
        }
        Self::new(n.to_vec(), d.to_vec(), samples)
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample-cell volume `Π dx`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Frequency-cell volume `Π 1/(n dx)`.
    pub fn freq_cell_volume(&self) -> f64 {
        self.grid.iter().zip(&self.spacing).map(|(&n, &d)| 1.0 / (n as f64 * d)).product()
    }

    /// Coordinates along `axis`.
    pub fn coords(&self, axis: usize) -> Vec<f64> {
        let (n, d) = (self.grid[axis], self.spacing[axis]);
        let x0 = -((n / 2) as f64) * d;
        (0..n).map(|i| x0 + i as f64 * d).collect()
    }

    /// Centered physical frequencies along `axis`, in cycles per unit.
    pub fn freq_axis(&self, axis: usize) -> Vec<f64> {
        let (n, d) = (self.grid[axis], self.spacing[axis]);
        (0..n).map(|c| centered_bin(c, n) as f64 / (n as f64 * d)).collect()
    }

    /// Frequency vector of flat centered index `idx`.
    pub fn freq_of(&self, idx: usize) -> Vec<f64> {
        self.unflatten(idx)
            .iter()
            .enumerate()
            .map(|(a, &c)| centered_bin(c, self.grid[a]) as f64 / (self.grid[a] as f64 * self.spacing[a]))
            .collect()
    }

    pub(crate) fn unflatten(&self, idx: usize) -> Vec<usize> {
        match self.grid[..] {
            [_] => vec![idx],
            [_, n1] => vec![idx / n1, idx % n1],
            _ => unreachable!(),
        }
    }

    /// Continuum-normalized transform `f̂(ζ) ≈ ΔV Σ f(x) e^{−2πi⟨ζ,x⟩}` on
    /// centered bins, computed once.
    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut raw: Vec<Complex64> = self.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            fft_nd(&mut raw, &self.grid, false);
            let dv = self.cell_volume();
            let mut out = vec![Complex64::new(0.0, 0.0); raw.len()];
            let origin: Vec<f64> = (0..self.dim()).map(|a| -((self.grid[a] / 2) as f64) * self.spacing[a]).collect();
            for (c, slot) in out.iter_mut().enumerate() {
                let cidx = self.unflatten(c);
                let zeta = self.freq_of(c);
                let phase: f64 = zeta.iter().zip(&origin).map(|(z, x)| z * x).sum();
                let r = self.raw_index(&cidx);
                *slot = raw[r] * dv * Complex64::from_polar(1.0, -2.0 * PI * phase);
            }
            out
        })
    }

    /// Flat index into unshifted FFT storage for a centered multi-index.
    pub(crate) fn raw_index(&self, cidx: &[usize]) -> usize {
        let mut r = 0;
        for (a, &c) in cidx.iter().enumerate() {
            let n = self.grid[a];
            let k = centered_bin(c, n).rem_euclid(n as isize) as usize;
            r = r * n + k;
        }
        r
    }

    /// Relative gap between `Σ|f|² ΔV` and `Σ|f̂|² Δζ`.
    pub fn parseval_defect(&self) -> f64 {
        let lhs: f64 = self.samples.iter().map(|v| v * v).sum::<f64>() * self.cell_volume();
        let rhs: f64 = self.spectrum().iter().map(|z| z.norm_sqr()).sum::<f64>() * self.freq_cell_volume();
        if lhs == 0.0 {
            rhs
        } else {
            (lhs - rhs).abs() / lhs
        }
    }

    /// Continuum L2 norm `(Σ f² ΔV)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.samples.iter().map(|v| v * v).sum::<f64>() * self.cell_volume()).sqrt()
    }

    pub fn with_taper(&self, taper: Taper) -> SpectralSignal {
        match taper {
            Taper::None => self.clone(),
            Taper::Parzen => {
                let windows: Vec<Vec<f64>> = (0..self.dim())
                    .map(|a| {
                        let half = self.grid[a] as f64 * self.spacing[a] / 2.0;
                        self.coords(a).iter().map(|x| parzen(x.abs() / half)).collect()
                    })
                    .collect();
                let samples = (0..self.len())
                    .map(|i| {
                        let idx = self.unflatten(i);
                        self.samples[i] * idx.iter().enumerate().map(|(a, &k)| windows[a][k]).product::<f64>()
                    })
                    .collect();
                Self::new(self.grid.clone(), self.spacing.clone(), samples).expect("same grid")
            }
        }
    }

    pub(crate) fn with_samples(&self, samples: Vec<f64>) -> SpectralSignal {
        Self::new(self.grid.clone(), self.spacing.clone(), samples).expect("same grid")
    }

    pub fn same_grid(&self, other: &SpectralSignal) -> bool {
        self.grid == other.grid && self.spacing == other.spacing
    }
}

fn parzen(u: f64) -> f64 {
    if u <= 0.5 {
        1.0 - 6.0 * u * u + 6.0 * u * u * u
    } else if u <= 1.0 {
        2.0 * (1.0 - u).powi(3)
    } else {
        0.0
    }
}

/// Signed bin number of centered position `c` on an axis of length `n`.
pub(crate) fn centered_bin(c: usize, n: usize) -> isize {
    c as isize - (n / 2) as isize
}

/// In-place unnormalized DFT over a row-major 1-D or 2-D array.
pub(crate) fn fft_nd(data: &mut [Complex64], grid: &[usize], inverse: bool) {
    let mut planner = FftPlanner::new();
    let plan = |planner: &mut FftPlanner<f64>, n: usize| {
        if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        }
    };
    match grid[..] {
        [n] => plan(&mut planner, n).process(data),
        [n0, n1] => {
            plan(&mut planner, n1).process(data);
            let col_fft = plan(&mut planner, n0);
            let mut buf = vec![Complex64::new(0.0, 0.0); n0];
            for j in 0..n1 {
                for i in 0..n0 {
                    buf[i] = data[i * n1 + j];
                }
                col_fft.process(&mut buf);
                for i in 0..n0 {
                    data[i * n1 + j] = buf[i];
                }
            }
        }
        _ => unreachable!("grid dimension checked at construction"),
    }
}

/// Samples whose continuum spectrum is `spec` (centered layout of `s`),
/// with the largest discarded imaginary part.
pub fn inverse_spectrum(s: &SpectralSignal, spec: &[Complex64]) -> (Vec<f64>, f64) {
    let dv = s.cell_volume();
    let origin: Vec<f64> = (0..s.dim()).map(|a| -((s.grid[a] / 2) as f64) * s.spacing[a]).collect();
    let mut raw = vec![Complex64::new(0.0, 0.0); s.len()];
    for (c, z) in spec.iter().enumerate() {
        let phase: f64 = s.freq_of(c).iter().zip(&origin).map(|(f, x)| f * x).sum();
        raw[s.raw_index(&s.unflatten(c))] = z / dv * Complex64::from_polar(1.0, 2.0 * PI * phase);
    }
    fft_nd(&mut raw, &s.grid, true);
    let n = s.len() as f64;
    let imag = raw.iter().map(|z| (z.im / n).abs()).fold(0.0, f64::max);
    (raw.iter().map(|z| z.re / n).collect(), imag)
}

/// Parses a signal CSV. A `# dx=<s>` header marks 1-D data (one sample per
/// line); `# dx=<s> dy=<s>` marks 2-D data (one row per line).
pub fn parse_signal_csv(text: &str) -> Result<SpectralSignal, FourierError> {
    let mut dx = None;
    let mut dy = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            for tok in header.split_whitespace() {
                let parse = |v: &str| {
                    v.parse::<f64>().map_err(|e| FourierError::Parse {
                        line: lineno + 1,
                        message: format!("bad spacing {v:?}: {e}"),
                    })
                };
                if let Some(v) = tok.strip_prefix("dx=") {
                    dx = Some(parse(v)?);
                } else if let Some(v) = tok.strip_prefix("dy=") {
                    dy = Some(parse(v)?);
                }
            }
            continue;
        }
        let row = line
            .split(',')
            .map(|t| {
                t.trim().parse::<f64>().map_err(|e| FourierError::Parse {
                    line: lineno + 1,
                    message: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(FourierError::Parse {
                    line: lineno + 1,
                    message: format!("expected {} values, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    let dx = dx.ok_or(FourierError::Parse {
        line: 1,
        message: "missing `# dx=` header".into(),
    })?;
    match dy {
        None => {
            if rows.iter().any(|r| r.len() != 1) {
                return Err(FourierError::Parse {
                    line: 1,
                    message: "1-D signal must have one value per line (add dy= for 2-D)".into(),
                });
            }
            let n = rows.len();
            SpectralSignal::new(vec![n], vec![dx], rows.into_iter().flatten().collect())
        }
        Some(dy) => {
            let (n0, n1) = (rows.len(), rows.first().map_or(0, Vec::len));
            SpectralSignal::new(vec![n0, n1], vec![dx, dy], rows.into_iter().flatten().collect())
        }
    }
}

pub fn read_signal_csv(path: impl AsRef<Path>) -> Result<SpectralSignal, FourierError> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| FourierError::Io(e.to_string()))?;
    parse_signal_csv(&text)
}

pub fn signal_to_csv(s: &SpectralSignal) -> String {
    use crate::matcore::format_f64;
    let mut out = String::new();
    match s.grid[..] {
        [_] => {
            out.push_str(&format!("# dx={}\n", format_f64(s.spacing[0])));
            for v in &s.samples {
                out.push_str(&format_f64(*v));
                out.push('\n');
            }
        }
        [_, n1] => {
            out.push_str(&format!("# dx={} dy={}\n", format_f64(s.spacing[0]), format_f64(s.spacing[1])));
            for row in s.samples.chunks(n1) {
                let cells: Vec<String> = row.iter().map(|v| format_f64(*v)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        _ => unreachable!(),
    }
    out
}

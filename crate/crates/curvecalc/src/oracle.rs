//! Numerical spectra of asymptotic operators `A = -i d/dt - S(t)` on loops in `C = R^2`.
//!
//! The operator is discretized by a Galerkin projection onto the real basis
//! `{e^{2 pi i n t}, i e^{2 pi i n t}}`, `|n| <= N`, which yields a real symmetric matrix.
//! Windings use the counterclockwise convention: `e^{2 pi i n t}` has winding `n`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Symmetric real 2x2 matrix `[[a, b], [b, c]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Sym2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Sym2 {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Sym2 { a, b, c }
    }

    pub fn scalar(s: f64) -> Self {
        Sym2::new(s, 0.0, s)
    }

    fn scale(self, k: f64) -> Self {
        Sym2::new(k * self.a, k * self.b, k * self.c)
    }

    fn add(self, o: Sym2) -> Self {
        Sym2::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

/// Loop `S(t) = constant + sum_n (cos_n cos 2 pi n t + sin_n sin 2 pi n t)`, `n = 1..=F`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LoopOperator {
    pub constant: Sym2,
    #[serde(default)]
    pub cos: Vec<Sym2>,
    #[serde(default)]
    pub sin: Vec<Sym2>,
}

impl LoopOperator {
    pub fn constant(s: Sym2) -> Self {
        LoopOperator {
            constant: s,
            ..Default::default()
        }
    }

    /// `S = 2 pi theta I`: an elliptic orbit with rotation `theta`.
    pub fn elliptic(theta: f64) -> Self {
        Self::constant(Sym2::scalar(2.0 * PI * theta))
    }

    /// `R(phi) diag(a, -a) R(phi)^T + pi q I` with `phi = pi q t`, conjugate to `diag(a, -a)`
    /// in a frame turning `q/2` times.
    fn rotating(q: i64, a: f64) -> Self {
        let f = q.unsigned_abs() as usize;
        let mut op = Self::constant(Sym2::scalar(PI * q as f64));
        if f == 0 {
            op.constant = op.constant.add(Sym2::new(a, 0.0, -a));
            return op;
        }
        op.cos = vec![Sym2::default(); f];
        op.sin = vec![Sym2::default(); f];
        let sign = q.signum() as f64;
        op.cos[f - 1] = Sym2::new(a, 0.0, -a);
        op.sin[f - 1] = Sym2::new(0.0, sign * a, 0.0);
        op
    }

    /// Even hyperbolic model with `alpha = d`.
    pub fn even_hyperbolic(d: i64, a: f64) -> Self {
        Self::rotating(2 * d, a)
    }

    /// Odd hyperbolic model with `alpha = d`: a half twist per period.
    pub fn odd_hyperbolic(d: i64, a: f64) -> Self {
        Self::rotating(2 * d + 1, a)
    }

    /// Fourier coefficients from `G` uniform samples, truncated at order `(G - 1) / 2`.
    pub fn from_samples(samples: &[Sym2]) -> Result<Self> {
        let g = samples.len();
        if g == 0 {
            return Err(Error::TruncationTooSmall { n: 0, f: 0 });
        }
        let gf = g as f64;
        let mean = samples.iter().fold(Sym2::default(), |acc, s| acc.add(*s)).scale(1.0 / gf);
        let order = (g - 1) / 2;
        let (mut cos, mut sin) = (Vec::with_capacity(order), Vec::with_capacity(order));
        for n in 1..=order {
            let (mut cn, mut sn) = (Sym2::default(), Sym2::default());
            for (j, s) in samples.iter().enumerate() {
                let x = 2.0 * PI * (n * j) as f64 / gf;
                cn = cn.add(s.scale(2.0 * x.cos() / gf));
                sn = sn.add(s.scale(2.0 * x.sin() / gf));
            }
            cos.push(cn);
            sin.push(sn);
        }
        Ok(LoopOperator {
            constant: mean,
            cos,
            sin,
        })
    }

    /// Random smooth loop of Fourier order `f` with coefficients of size at most `scale`.
    pub fn random<R: Rng>(rng: &mut R, f: usize, scale: f64) -> Self {
        let draw = |rng: &mut R| {
            Sym2::new(
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
            )
        };
        let constant = draw(rng);
        let cos = (0..f).map(|_| draw(rng)).collect();
        let sin = (0..f).map(|_| draw(rng)).collect();
        LoopOperator { constant, cos, sin }
    }

    pub fn fourier_order(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    /// `S_k(t) = k S(k t)`.
    pub fn cover(&self, k: usize) -> Self {
        let kf = k as f64;
        let spread = |v: &Vec<Sym2>| {
            let mut out = vec![Sym2::default(); v.len() * k];
            for (n, s) in v.iter().enumerate() {
                out[(n + 1) * k - 1] = s.scale(kf);
            }
            out
        };
        LoopOperator {
            constant: self.constant.scale(kf),
            cos: spread(&self.cos),
            sin: spread(&self.sin),
        }
    }

    pub fn eval(&self, t: f64) -> Sym2 {
        let mut s = self.constant;
        for (n, m) in self.cos.iter().enumerate() {
            s = s.add(m.scale((2.0 * PI * (n + 1) as f64 * t).cos()));
        }
        for (n, m) in self.sin.iter().enumerate() {
            s = s.add(m.scale((2.0 * PI * (n + 1) as f64 * t).sin()));
        }
        s
    }

    /// Complex Fourier coefficient `S_hat(n)` of the entries `(a, b, c)`.
    fn entry_coeff(&self, n: i64) -> [C64; 3] {
        let m = n.unsigned_abs() as usize;
        if m == 0 {
            let s = self.constant;
            return [s.a, s.b, s.c].map(|x| C64::new(x, 0.0));
        }
        let zero = Sym2::default();
        let cm = self.cos.get(m - 1).copied().unwrap_or(zero);
        let sm = self.sin.get(m - 1).copied().unwrap_or(zero);
        let sign = n.signum() as f64;
        [(cm.a, sm.a), (cm.b, sm.b), (cm.c, sm.c)].map(|(c, s)| C64::new(c / 2.0, -sign * s / 2.0))
    }

    /// Coefficients of `s = (a + c)/2` and `q = (a - c)/2 + i b`, so that `S z = s z + q conj(z)`.
    fn s_q(&self, n: i64) -> (C64, C64) {
        let [a, b, c] = self.entry_coeff(n);
        ((a + c) * 0.5, (a - c) * 0.5 + C64::i() * b)
    }
}

/// Tolerances of the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub degeneracy: f64,
    pub pairing: f64,
    pub winding_guard: f64,
    pub modulus: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            degeneracy: 1e-8,
            pairing: 1e-6,
            winding_guard: 0.25,
            modulus: 1e-6,
        }
    }
}

/// Index of basis element `(n, part)` with `part` 0 for `e^{2 pi i n t}` and 1 for `i e^{2 pi i n t}`.
fn basis_index(n: i64, part: usize, truncation: usize) -> usize {
    2 * (n + truncation as i64) as usize + part
}

/// Real symmetric Galerkin matrix of size `2(2N+1)`.
pub fn discretize(op: &LoopOperator, truncation: usize) -> Result<DMatrix<f64>> {
    let f = op.fourier_order();
    if truncation < 2 * f || truncation == 0 {
        return Err(Error::TruncationTooSmall { n: truncation, f });
    }
    let nn = truncation as i64;
    let dim = 2 * (2 * truncation + 1);
    let units = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for j in -nn..=nn {
        for k in -nn..=nn {
            let (s, _) = op.s_q(j - k);
            let (_, q) = op.s_q(j + k);
            for (pj, cj) in units.iter().enumerate() {
                for (pk, ck) in units.iter().enumerate() {
                    let mut v = -(cj.conj() * ck * s) - cj.conj() * ck.conj() * q;
                    if j == k {
                        v += cj.conj() * ck * (2.0 * PI * k as f64);
                    }
                    m[(basis_index(j, pj, truncation), basis_index(k, pk, truncation))] = v.re;
                }
            }
        }
    }
    let asym = (&m - m.transpose()).amax();
    if asym > 1e-12 * m.amax().max(1.0) {
        return Err(Error::NonSymmetric);
    }
    Ok(m)
}

/// Fourier coefficients `z_n` of an eigenvector, indexed by `n + N`.
fn modes(v: &[f64], truncation: usize) -> Vec<C64> {
    (0..2 * truncation + 1).map(|i| C64::new(v[2 * i], v[2 * i + 1])).collect()
}

fn sample(coeffs: &[C64], truncation: usize, count: usize) -> Vec<C64> {
    (0..count)
        .map(|j| {
            let t = j as f64 / count as f64;
            let omega = C64::from_polar(1.0, 2.0 * PI * t);
            let poly = coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * omega + c);
            poly * C64::from_polar(1.0, -2.0 * PI * truncation as f64 * t)
        })
        .collect()
}

/// Winding of a sampled closed loop in `C`, with its minimum modulus.
pub fn winding_of(samples: &[C64], tol: &Tolerances) -> Result<(i64, f64)> {
    let min_modulus = samples.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if samples.is_empty() || min_modulus <= tol.modulus {
        return Err(Error::VectorTooSmall(if samples.is_empty() { 0.0 } else { min_modulus }));
    }
    let mut total = 0.0;
    for (i, z) in samples.iter().enumerate() {
        let next = samples[(i + 1) % samples.len()];
        total += (next / z).arg();
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > tol.winding_guard {
        return Err(Error::WindingAmbiguous(turns));
    }
    Ok((rounded as i64, min_modulus))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub eigenvalue: f64,
    pub winding: i64,
    pub min_modulus: f64,
    /// Largest `j` with the eigenvector `1/j`-periodic, read off its Fourier support.
    pub period_divisor: i64,
    /// Set when the eigenvalue lies within the pairing tolerance of another one.
    pub clustered: bool,
}

/// Sorted eigen decomposition of the Galerkin matrix.
struct Spectrum {
    truncation: usize,
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    fn new(op: &LoopOperator, truncation: usize) -> Result<Self> {
        let eig = SymmetricEigen::new(discretize(op, truncation)?);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        Ok(Spectrum {
            truncation,
            values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
            vectors: order.iter().map(|&i| eig.eigenvectors.column(i).iter().copied().collect()).collect(),
        })
    }

    fn pair(&self, pos: usize, tol: &Tolerances) -> Result<EigenPair> {
        let n = self.truncation;
        let coeffs = modes(&self.vectors[pos], n);
        let (winding, min_modulus) = winding_of(&sample(&coeffs, n, 4 * (2 * n + 1)), tol)?;
        let peak = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let period_divisor = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 1e-8 * peak)
            .fold(0i64, |g, (i, _)| num_integer::gcd(g, i as i64 - n as i64));
        let near = |p: usize| (self.values[p] - self.values[pos]).abs() <= tol.pairing;
        let clustered = (pos > 0 && near(pos - 1)) || (pos + 1 < self.values.len() && near(pos + 1));
        Ok(EigenPair {
            eigenvalue: self.values[pos],
            winding,
            min_modulus,
            period_divisor,
            clustered,
        })
    }
}

/// Eigenpairs with `|lambda| <= window`, sorted by eigenvalue.
pub fn eigenpairs(op: &LoopOperator, truncation: usize, window: f64, tol: &Tolerances) -> Result<Vec<EigenPair>> {
    let spectrum = Spectrum::new(op, truncation)?;
    (0..spectrum.values.len())
        .filter(|&i| spectrum.values[i].abs() <= window)
        .map(|i| spectrum.pair(i, tol))
        .collect()
}

/// `(alpha, parity)` from the eigenvectors at the extremal eigenvalues around zero.
pub fn alpha_parity_numeric(op: &LoopOperator, truncation: usize, tol: &Tolerances) -> Result<(i64, i64)> {
    let spectrum = Spectrum::new(op, truncation)?;
    if let Some(&v) = spectrum.values.iter().find(|v| v.abs() < tol.degeneracy) {
        return Err(Error::DegenerateOrbit(v));
    }
    let first_pos = spectrum.values.iter().position(|&v| v > 0.0);
    match first_pos {
        Some(p) if p > 0 => {
            let neg = spectrum.pair(p - 1, tol)?;
            let pos = spectrum.pair(p, tol)?;
            Ok((neg.winding, if neg.winding == pos.winding { 0 } else { 1 }))
        }
        _ => Err(Error::LawViolation("no eigenvalues on one side of zero".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub truncation: usize,
    pub window: f64,
    pub eigenpairs: Vec<EigenPair>,
    /// Number of eigenvalues carrying each winding.
    pub bins: BTreeMap<i64, usize>,
}

/// Monotonicity of winding in the eigenvalue and multiplicity two per winding.
/// The extreme bins may be cut by the window and are only bounded by two.
pub fn verify_spectrum_laws(op: &LoopOperator, truncation: usize, window: f64, tol: &Tolerances) -> Result<SpectrumReport> {
    let pairs = eigenpairs(op, truncation, window, tol)?;
    for w in pairs.windows(2) {
        let apart = w[1].eigenvalue - w[0].eigenvalue > tol.pairing;
        if apart && w[1].winding < w[0].winding {
            return Err(Error::LawViolation(format!(
                "winding {} at {:.6} exceeds winding {} at {:.6}",
                w[0].winding, w[0].eigenvalue, w[1].winding, w[1].eigenvalue
            )));
        }
    }
    let mut bins = BTreeMap::new();
    for p in &pairs {
        *bins.entry(p.winding).or_insert(0usize) += 1;
    }
    let (lo, hi) = match (bins.keys().next(), bins.keys().next_back()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::LawViolation("window contains no eigenvalues".into())),
    };
    for w in lo..=hi {
        let n = bins.get(&w).copied().unwrap_or(0);
        let edge = w == lo || w == hi;
        if n > 2 || (!edge && n != 2) {
            return Err(Error::LawViolation(format!("winding {w} carries {n} eigenvalues")));
        }
    }
    Ok(SpectrumReport {
        truncation,
        window,
        eigenpairs: pairs,
        bins,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub k: usize,
    pub matched: usize,
    pub max_error: f64,
    pub covering_checked: usize,
}

/// Every eigenpair `(lambda, w)` of `op` with `|k lambda| <= window` reappears as `(k lambda, k w)`
/// for the `k`-fold cover, and cover eigenvectors satisfy `cov = gcd(wind, k)`.
/// Both operators are discretized at the same truncation.
pub fn verify_cover_law(op: &LoopOperator, k: usize, truncation: usize, window: f64, tol: &Tolerances) -> Result<CoverReport> {
    if k == 0 {
        return Err(Error::InvalidProfile("cover degree must be positive".into()));
    }
    let kf = k as f64;
    let base = eigenpairs(op, truncation, window / kf, tol)?;
    let cover = eigenpairs(&op.cover(k), truncation, window + 1.0, tol)?;
    let mut max_error: f64 = 0.0;
    for p in &base {
        let target = kf * p.eigenvalue;
        let hit = cover
            .iter()
            .filter(|c| c.winding == k as i64 * p.winding)
            .map(|c| (c.eigenvalue - target).abs())
            .fold(f64::INFINITY, f64::min);
        if hit > tol.pairing * target.abs().max(1.0) {
            return Err(Error::LawViolation(format!(
                "eigenvalue {target:.8} with winding {} missing from the {k}-fold cover",
                k as i64 * p.winding
            )));
        }
        max_error = max_error.max(hit);
    }
    let mut covering_checked = 0;
    for c in cover.iter().filter(|c| !c.clustered && c.eigenvalue.abs() <= window) {
        let cov = num_integer::gcd(c.period_divisor, k as i64);
        let expected = num_integer::gcd(c.winding, k as i64);
        if cov != expected {
            return Err(Error::LawViolation(format!(
                "cover eigenvector at {:.6} has covering number {cov}, expected gcd({}, {k}) = {expected}",
                c.eigenvalue, c.winding
            )));
        }
        covering_checked += 1;
    }
    Ok(CoverReport {
        k,
        matched: base.len(),
        max_error,
        covering_checked,
    })
}

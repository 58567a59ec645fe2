//! Exact intersection numbers on the smooth projective toric variety of a
//! normal fan: Chern and Todd classes, Riemann–Roch point counts, and the
//! double-point expression controlling secant varieties.
//!
//! Classes live in the Chow ring as polynomials in one divisor symbol `D_ρ`
//! per ray, truncated above the top degree. Reduction to torus-orbit classes
//! happens only at integration time, via the standard multiplication rules
//! for `D_ρ · [V(σ)]` in a smooth complete fan; every maximal-cone class
//! integrates to 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::polytope::LatticePolytope;
use crate::zlinalg::{solve_integer, IntMat, IntVec};

/// A rational polynomial in the divisor symbols of a fixed fan, truncated at
/// total degree `dim`. Supports exact ring arithmetic; all maps are ordered
/// so equal classes compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowCycle {
    dim: usize,
    nrays: usize,
    /// exponent vector over rays -> coefficient; no zero coefficients stored.
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl ChowCycle {
    pub fn zero(fan: &Fan) -> Self {
        ChowCycle {
            dim: fan.dim(),
            nrays: fan.rays().len(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(fan: &Fan) -> Self {
        let mut c = ChowCycle::zero(fan);
        c.terms.insert(vec![0; c.nrays], BigRational::one());
        c
    }

    /// The boundary divisor D_ρ for ray index `i`.
    pub fn divisor(fan: &Fan, i: usize) -> Self {
        let mut c = ChowCycle::zero(fan);
        let mut e = vec![0u32; c.nrays];
        e[i] = 1;
        c.terms.insert(e, BigRational::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    fn assert_compatible(&self, other: &ChowCycle) {
        assert_eq!(self.dim, other.dim, "cycles from different fans");
        assert_eq!(self.nrays, other.nrays, "cycles from different fans");
    }

    fn insert(&mut self, expts: Vec<u32>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        if expts.iter().map(|&e| e as usize).sum::<usize>() > self.dim {
            return; // truncated away
        }
        let entry = self.terms.entry(expts).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            // keep the no-zero-coefficients invariant
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &ChowCycle) -> ChowCycle {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ChowCycle) -> ChowCycle {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> ChowCycle {
        if factor.is_zero() {
            return ChowCycle {
                dim: self.dim,
                nrays: self.nrays,
                terms: BTreeMap::new(),
            };
        }
        ChowCycle {
            dim: self.dim,
            nrays: self.nrays,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Ring product, truncated at total degree `dim`.
    pub fn mul(&self, other: &ChowCycle) -> ChowCycle {
        self.assert_compatible(other);
        let mut out = ChowCycle {
            dim: self.dim,
            nrays: self.nrays,
            terms: BTreeMap::new(),
        };
        for (e1, c1) in &self.terms {
            let d1: usize = e1.iter().map(|&e| e as usize).sum();
            for (e2, c2) in &other.terms {
                let d2: usize = e2.iter().map(|&e| e as usize).sum();
                if d1 + d2 > self.dim {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> ChowCycle {
        let mut acc = ChowCycle {
            dim: self.dim,
            nrays: self.nrays,
            terms: BTreeMap::new(),
        };
        acc.terms.insert(vec![0; self.nrays], BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The homogeneous part of the given total degree.
    pub fn graded_part(&self, degree: usize) -> ChowCycle {
        ChowCycle {
            dim: self.dim,
            nrays: self.nrays,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

/// An ample torus-invariant divisor Σ a_ρ D_ρ, with one integer coefficient
/// per ray of the fan (in ray order). For a divisor built from a polytope,
/// P = {m : ⟨m, v_ρ⟩ ≥ −a_ρ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleDivisor {
    coeffs: Vec<BigInt>,
}

impl AmpleDivisor {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The divisor as a degree-1 Chow class.
    pub fn class(&self, fan: &Fan) -> ChowCycle {
        assert_eq!(self.coeffs.len(), fan.rays().len(), "divisor/fan mismatch");
        let mut c = ChowCycle::zero(fan);
        for (i, a) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; c.nrays];
            e[i] = 1;
            c.insert(e, BigRational::from_integer(a.clone()));
        }
        c
    }
}

/// The divisor of the polytope itself: a_ρ = facet offset, so that the
/// polytope is exactly {m : ⟨m, v_ρ⟩ + a_ρ ≥ 0}. Its class is the hyperplane
/// class H = c_1(O(1)) of the projective embedding by lattice points.
pub fn ample_from_polytope(p: &LatticePolytope) -> Result<AmpleDivisor> {
    p.require_smooth()?;
    Ok(AmpleDivisor {
        coeffs: p.facets().iter().map(|f| f.offset.clone()).collect(),
    })
}

/// Intersection number of a degree-n monomial in boundary divisors.
///
/// Maintains a rational combination of orbit-closure classes [V(σ)] (σ a
/// sorted ray-index set), multiplying in one divisor factor at a time:
///  * ρ ∉ σ, σ∪{ρ} a cone: D_ρ·[V(σ)] = [V(σ∪{ρ})];
///  * ρ ∉ σ, no such cone: 0;
///  * ρ ∈ σ: pick u with ⟨u,v_ρ⟩ = 1 and ⟨u,v_ρ'⟩ = 0 for the other rays of
///    σ (exists by smoothness), rewrite D_ρ ≡ −Σ_{ρ''∉σ} ⟨u,v_{ρ''}⟩ D_{ρ''}
///    modulo relations vanishing on V(σ), and apply the first two rules
///    termwise.
/// Each maximal-cone class integrates to 1.
pub fn integrate_monomial(fan: &Fan, exponents: &[u32]) -> Result<BigRational> {
    fan.require_smooth()?;
    if exponents.len() != fan.rays().len() {
        return Err(Error::input("one exponent per ray required"));
    }
    let total: usize = exponents.iter().map(|&e| e as usize).sum();
    if total != fan.dim() {
        return Err(Error::input(format!(
            "monomial degree {} does not match fan dimension {}",
            total,
            fan.dim()
        )));
    }
    let mut cycle: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    cycle.insert(Vec::new(), BigRational::one());
    for (ray, &mult) in exponents.iter().enumerate() {
        for _ in 0..mult {
            cycle = multiply_by_divisor(fan, &cycle, ray)?;
            if cycle.is_empty() {
                return Ok(BigRational::zero());
            }
        }
    }
    let mut sum = BigRational::zero();
    for (sigma, coeff) in &cycle {
        if sigma.len() != fan.dim() {
            return Err(Error::internal(
                "integration left a non-maximal cone class",
            ));
        }
        sum += coeff;
    }
    Ok(sum)
}

fn multiply_by_divisor(
    fan: &Fan,
    cycle: &BTreeMap<Vec<usize>, BigRational>,
    ray: usize,
) -> Result<BTreeMap<Vec<usize>, BigRational>> {
    let mut out: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    let mut push = |sigma: Vec<usize>, c: BigRational| {
        if c.is_zero() {
            return;
        }
        let entry = out.entry(sigma).or_insert_with(BigRational::zero);
        *entry += c;
    };
    for (sigma, coeff) in cycle {
        if let Err(pos) = sigma.binary_search(&ray) {
            // Transverse case: extend the cone or die.
            let mut tau = sigma.clone();
            tau.insert(pos, ray);
            if fan.has_cone(&tau) {
                push(tau, coeff.clone());
            }
        } else {
            // Self-intersection: move D_ray off σ using a dual vector u with
            // ⟨u, v_ray⟩ = 1 and ⟨u, v⟩ = 0 on the other rays of σ.
            let mut rows = vec![fan.rays()[ray].clone()];
            for &j in sigma {
                if j != ray {
                    rows.push(fan.rays()[j].clone());
                }
            }
            let mut rhs = vec![BigInt::zero(); rows.len()];
            rhs[0] = BigInt::one();
            let u = solve_integer(&IntMat::from_rows(&rows), &IntVec::new(rhs))
                .ok_or_else(|| {
                    Error::internal("no dual vector for a smooth cone (fan bug)")
                })?;
            for rho in 0..fan.rays().len() {
                if sigma.binary_search(&rho).is_ok() {
                    continue;
                }
                let pairing = u.dot(&fan.rays()[rho]);
                if pairing.is_zero() {
                    continue;
                }
                let mut tau = sigma.clone();
                let pos = tau.binary_search(&rho).unwrap_err();
                tau.insert(pos, rho);
                if fan.has_cone(&tau) {
                    push(tau, coeff * &BigRational::from_integer(-pairing));
                }
            }
        }
    }
    // Drop exact cancellations.
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Integral of the top-degree part of a class (lower degrees integrate to 0).
pub fn integrate(fan: &Fan, class: &ChowCycle) -> Result<BigRational> {
    let top = class.graded_part(fan.dim());
    let mut sum = BigRational::zero();
    for (e, c) in top.terms() {
        sum += c * integrate_monomial(fan, e)?;
    }
    Ok(sum)
}

/// Total Chern class of the tangent bundle: ∏_ρ (1 + D_ρ), truncated.
pub fn total_chern(fan: &Fan) -> Result<ChowCycle> {
    fan.require_smooth()?;
    let mut c = ChowCycle::one(fan);
    for i in 0..fan.rays().len() {
        c = c.mul(&ChowCycle::one(fan).add(&ChowCycle::divisor(fan, i)));
    }
    Ok(c)
}

/// Multiplicative inverse of the total Chern class as a truncated power
/// series: with s = c − 1, returns Σ_k (−s)^k. The expansion begins
/// 1 − c_1 + (c_1² − c_2) + (2c_1c_2 − c_1³ − c_3) + ⋯.
pub fn inverse_total_chern(fan: &Fan) -> Result<ChowCycle> {
    let c = total_chern(fan)?;
    let s = c.sub(&ChowCycle::one(fan));
    let mut acc = ChowCycle::one(fan);
    let mut power = ChowCycle::one(fan);
    let minus_s = s.scale(&-BigRational::one());
    for _ in 1..=fan.dim() {
        power = power.mul(&minus_s);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    Ok(acc)
}

/// Bernoulli numbers B_0..B_n (convention B_1 = −1/2), exact.
fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // Σ_{j=0}^{m} binom(m+1, j) B_j = 0  ⟹  solve for B_m.
        let mut sum = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            sum += BigRational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
        }
        let denom = BigRational::from_integer(BigInt::from(m as u64 + 1));
        b.push(-sum / denom);
    }
    b
}

/// Todd class td(X) = ∏_ρ D_ρ/(1 − e^{−D_ρ}), truncated at the top degree.
/// Expansion begins 1 + ½c_1 + 1/12(c_1² + c_2) + 1/24·c_1c_2 + ⋯.
pub fn todd(fan: &Fan) -> Result<ChowCycle> {
    fan.require_smooth()?;
    let n = fan.dim();
    let bern = bernoulli(n);
    // x/(1−e^{−x}) = Σ_k (−1)^k B_k x^k / k!
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut kfac = BigInt::one();
    for (k, b) in bern.iter().enumerate() {
        if k > 0 {
            kfac *= BigInt::from(k as u64);
        }
        let sign = if k % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        coeffs.push(sign * b / BigRational::from_integer(kfac.clone()));
    }
    let mut td = ChowCycle::one(fan);
    for i in 0..fan.rays().len() {
        let mut factor = ChowCycle::zero(fan);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; fan.rays().len()];
            e[i] = k as u32;
            factor.insert(e, c.clone());
        }
        td = td.mul(&factor);
    }
    Ok(td)
}

/// exp(H) = Σ_k H^k / k!, truncated at the top degree.
fn exp_class(fan: &Fan, h: &ChowCycle) -> ChowCycle {
    let mut acc = ChowCycle::one(fan);
    let mut power = ChowCycle::one(fan);
    let mut kfac = BigInt::one();
    for k in 1..=fan.dim() {
        power = power.mul(h);
        kfac *= BigInt::from(k as u64);
        acc = acc.add(&power.scale(&BigRational::new(BigInt::one(), kfac.clone())));
    }
    acc
}

fn rational_to_integer(x: &BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::internal(format!("{what} is not an integer: {x}")));
    }
    Ok(x.to_integer())
}

/// The normal fan and hyperplane class of a smooth polytope, the common
/// setup for all polytope-level intersection numbers.
pub fn fan_and_hyperplane(p: &LatticePolytope) -> Result<(Fan, ChowCycle)> {
    p.require_smooth()?;
    let fan = p.normal_fan()?;
    let h = ample_from_polytope(p)?.class(&fan);
    Ok((fan, h))
}

/// deg X = ∫ H^n; equals the normalized volume of P.
pub fn degree_of_embedding(p: &LatticePolytope) -> Result<BigInt> {
    let (fan, h) = fan_and_hyperplane(p)?;
    let v = integrate(&fan, &h.pow(fan.dim()))?;
    rational_to_integer(&v, "degree of embedding")
}

/// The Chern number ∫ c_1(T_X)^n (the anticanonical self-intersection).
pub fn c1_top_power(p: &LatticePolytope) -> Result<BigInt> {
    p.require_smooth()?;
    let fan = p.normal_fan()?;
    let c1 = total_chern(&fan)?.graded_part(1);
    let v = integrate(&fan, &c1.pow(fan.dim()))?;
    rational_to_integer(&v, "c1^n")
}

/// ∫ c_n(T_X), the topological Euler characteristic; equals the number of
/// vertices of P.
pub fn euler_characteristic(p: &LatticePolytope) -> Result<BigInt> {
    p.require_smooth()?;
    let fan = p.normal_fan()?;
    let cn = total_chern(&fan)?.graded_part(fan.dim());
    let v = integrate(&fan, &cn)?;
    rational_to_integer(&v, "Euler characteristic")
}

/// Hirzebruch–Riemann–Roch point count: ∫ e^H · td(X) = ℓ(P), the number of
/// lattice points of P.
pub fn riemann_roch_count(p: &LatticePolytope) -> Result<BigInt> {
    let (fan, h) = fan_and_hyperplane(p)?;
    let chi = integrate(&fan, &exp_class(&fan, &h).mul(&todd(&fan)?))?;
    rational_to_integer(&chi, "Riemann-Roch count")
}

/// The double-point right-hand side
///   (deg X)² − Σ_{i=0}^{n} binom(2n+1, i) ∫ (c(T_X)^{-1} · H^i)
/// whose value is deg Sec X · deg φ.
pub fn secant_rhs(p: &LatticePolytope) -> Result<BigInt> {
    let (fan, h) = fan_and_hyperplane(p)?;
    let n = fan.dim();
    let inv_c = inverse_total_chern(&fan)?;
    let d = integrate(&fan, &h.pow(n))?;
    let mut sum = BigRational::zero();
    let mut h_power = ChowCycle::one(&fan);
    for i in 0..=n {
        if i > 0 {
            h_power = h_power.mul(&h);
        }
        // Only the degree-(n−i) part of c^{-1} pairs with H^i in degree n.
        let part = inv_c.graded_part(n - i);
        let term = integrate(&fan, &part.mul(&h_power))?;
        sum += BigRational::from_integer(binomial(2 * n as u64 + 1, i as u64)) * term;
    }
    let rhs = &d * &d - sum;
    rational_to_integer(&rhs, "double-point expression")
}

/// All degree-n monomial intersection numbers, for diagnostics: keys are
/// "D0^a0 D1^a1 …" with zero exponents omitted.
pub fn monomial_dump(p: &LatticePolytope) -> Result<Vec<(String, BigInt)>> {
    let (fan, _) = fan_and_hyperplane(p)?;
    let n = fan.dim();
    let nrays = fan.rays().len();
    let mut out = Vec::new();
    let mut expts = vec![0u32; nrays];
    fn rec(
        fan: &Fan,
        expts: &mut Vec<u32>,
        pos: usize,
        left: usize,
        out: &mut Vec<(String, BigInt)>,
    ) -> Result<()> {
        if pos + 1 == expts.len() {
            expts[pos] = left as u32;
            let v = integrate_monomial(fan, expts)?;
            let mut name = String::new();
            for (i, &e) in expts.iter().enumerate() {
                if e > 0 {
                    if !name.is_empty() {
                        name.push(' ');
                    }
                    name.push_str(&format!("D{i}^{e}"));
                }
            }
            out.push((name, rational_to_integer(&v, "intersection number")?));
            expts[pos] = 0;
            return Ok(());
        }
        for e in 0..=left {
            expts[pos] = e as u32;
            rec(fan, expts, pos + 1, left - e, out)?;
            expts[pos] = 0;
        }
        Ok(())
    }
    rec(&fan, &mut expts, 0, n, &mut out)?;
    Ok(out)
}

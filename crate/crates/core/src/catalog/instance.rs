use std::fmt;

use serde::{Serialize, Serializer};

use super::{
    bh_constant_complex, bh_constant_real, bh_exponent, diagonal_restriction_sum, hl_dsp_exponent,
    hl_pp_exponent, repeated_index_sum,
};
use crate::error::{LabError, Result};
use crate::ksz::RepetitionPattern;
use crate::norms::{sup_norm_ascent, sup_norm_linf_exact, BallSpec, NormResult};
use crate::pairing::BijectionSpec;
use crate::tensor::CoefficientTensor;

/// Multiplier `F(N)` on the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DimensionFactor {
    One,
    /// `N^e`.
    Power(f64),
}

impl DimensionFactor {
    pub fn at(&self, dim: usize) -> f64 {
        match self {
            DimensionFactor::One => 1.0,
            DimensionFactor::Power(e) => (dim as f64).powf(*e),
        }
    }
}

/// Which coefficients enter the left-hand side.
#[derive(Debug, Clone, PartialEq)]
pub enum Restriction {
    /// Every coefficient.
    Full,
    /// `a_{i, sigma_1(i), ..., sigma_{n-m}(i)}` over core tuples `i`.
    Diagonal,
    /// `U(e_{i_1} x n_1, ..., e_{i_k} x n_k)` over group values.
    Repeated(RepetitionPattern),
}

/// Sup-norm engine used for the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    /// Sign enumeration; real tensors on `l_inf` only.
    ExactLinf,
    /// Alternating ascent; a lower bound on the norm.
    Ascent { restarts: usize, seed: u64 },
}

/// A checkable statement `lhs_rho(U) <= C F(N) ||U||`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityInstance {
    pub name: String,
    /// Order `n` of the forms.
    pub arity: usize,
    /// Number `m` of free indices on the left-hand side.
    pub core: usize,
    /// Domain exponent; `inf` for `l_inf^N`.
    pub p: f64,
    pub exponent: f64,
    pub exponent_formula: String,
    pub constant: f64,
    /// Whether `constant` is a valid constant for real scalars, so that an
    /// exact-norm ratio above 1 is a genuine violation.
    pub proven: bool,
    pub factor: DimensionFactor,
    pub restriction: Restriction,
    /// Range `[1, K]^m` of core tuples for diagonal restrictions; defaults to
    /// the tensor dimension.
    pub core_dim: Option<usize>,
}

impl InequalityInstance {
    fn base(
        name: &str,
        arity: usize,
        core: usize,
        p: f64,
        exponent: f64,
        formula: &str,
        constant: f64,
    ) -> Self {
        InequalityInstance {
            name: name.to_string(),
            arity,
            core,
            p,
            exponent,
            exponent_formula: formula.to_string(),
            constant,
            proven: true,
            factor: DimensionFactor::One,
            restriction: Restriction::Full,
            core_dim: None,
        }
    }

    /// Bilinear forms on `l_inf`: exponent 4/3, constant `sqrt 2`.
    pub fn littlewood() -> Self {
        Self::base(
            "littlewood43",
            2,
            2,
            f64::INFINITY,
            4.0 / 3.0,
            "4/3",
            std::f64::consts::SQRT_2,
        )
    }

    /// `m`-linear forms on `l_inf` with exponent `2m/(m+1)` and the best known
    /// real constant.
    pub fn bohnenblust_hille(m: usize) -> Result<Self> {
        Ok(Self::base(
            "bh",
            m,
            m,
            f64::INFINITY,
            bh_exponent(m)?,
            "2m/(m+1)",
            bh_constant_real(m),
        ))
    }

    /// Order-`n` forms restricted to `(i, j, sigma_1(i,j), ..., sigma_{n-2}(i,j))`:
    /// exponent 4/3, constant `sqrt 2`.
    pub fn diagonal_43(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(LabError::invalid(format!(
                "two-index diagonal restriction needs order >= 3, got {n}"
            )));
        }
        let mut inst = Self::base(
            "diag43",
            n,
            2,
            f64::INFINITY,
            4.0 / 3.0,
            "4/3",
            std::f64::consts::SQRT_2,
        );
        inst.restriction = Restriction::Diagonal;
        Ok(inst)
    }

    /// Order-`n` forms restricted through `n - m` bijections of `m` indices:
    /// exponent `2m/(m+1)`, constant the best known real constant for `m`.
    pub fn diagonal_general(m: usize, n: usize) -> Result<Self> {
        if !(n > m && m >= 1) {
            return Err(LabError::invalid(format!(
                "diagonal restriction needs n > m >= 1, got m={m}, n={n}"
            )));
        }
        let mut inst = Self::base(
            "diag",
            n,
            m,
            f64::INFINITY,
            bh_exponent(m)?,
            "2m/(m+1)",
            bh_constant_real(m),
        );
        inst.restriction = Restriction::Diagonal;
        Ok(inst)
    }

    /// Two repeated index groups `U(e_i, ..., e_i, e_j, ..., e_j)` with
    /// exponent 4/3 and the complex constant `2/sqrt(pi)`; not a proven real
    /// constant.
    pub fn uni_repeated(pattern: RepetitionPattern) -> Result<Self> {
        if pattern.groups() != 2 {
            return Err(LabError::invalid(format!(
                "expected two index groups, got pattern {pattern}"
            )));
        }
        let n = pattern.slots();
        let mut inst = Self::base(
            "repeated43",
            n,
            2,
            f64::INFINITY,
            4.0 / 3.0,
            "4/3",
            bh_constant_complex(2),
        );
        inst.restriction = Restriction::Repeated(pattern);
        inst.proven = false;
        Ok(inst)
    }

    /// All coefficients at exponent 4/3 against `L_m^C N^{(m-2)/4} ||U||`;
    /// the constant is stated for complex scalars.
    pub fn multilinear_43_dimension(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(LabError::invalid(format!(
                "dimension-factor variant needs m >= 2, got {m}"
            )));
        }
        let mut inst = Self::base(
            "dim43",
            m,
            m,
            f64::INFINITY,
            4.0 / 3.0,
            "4/3",
            bh_constant_complex(m),
        );
        inst.factor = DimensionFactor::Power((m as f64 - 2.0) / 4.0);
        inst.proven = false;
        Ok(inst)
    }

    /// `p >= 2m`, exponent `2mp/(mp+p-2m)`; the optimal constant is unknown
    /// and 1 is used.
    pub fn hardy_littlewood_pp(m: usize, p: f64) -> Result<Self> {
        let mut inst = Self::base(
            "hl-pp",
            m,
            m,
            p,
            hl_pp_exponent(m, p)?,
            "2mp/(mp+p-2m)",
            1.0,
        );
        inst.proven = false;
        Ok(inst)
    }

    /// `m < p <= 2m`, exponent `p/(p-m)`; the constant is unknown and 1 is used.
    pub fn hardy_littlewood_dsp(m: usize, p: f64) -> Result<Self> {
        let mut inst = Self::base("hl-dsp", m, m, p, hl_dsp_exponent(m, p)?, "p/(p-m)", 1.0);
        inst.proven = false;
        Ok(inst)
    }

    /// Order-`m` forms on `l_p`, `m < p <= 2m`, restricted to
    /// `(i, j, sigma_1(i,j), ..., sigma_{m-2}(i,j))` at exponent `p/(p-m)`;
    /// the constant is unknown and 1 is used.
    pub fn holder_witness(m: usize, p: f64) -> Result<Self> {
        if m < 3 {
            return Err(LabError::invalid(format!(
                "witness restriction needs m >= 3, got {m}"
            )));
        }
        let mut inst = Self::base("prop90", m, 2, p, hl_dsp_exponent(m, p)?, "p/(p-m)", 1.0);
        inst.restriction = Restriction::Diagonal;
        inst.proven = false;
        Ok(inst)
    }

    /// Full diagonal `(sum_i |T(e_i, ..., e_i)|^{p/(p-m)})^{(p-m)/p} <= ||T||` on `l_p`, `p > m`.
    pub fn zalduendo(m: usize, p: f64) -> Result<Self> {
        if m < 1 || p.is_nan() || p <= m as f64 {
            return Err(LabError::exponent(
                p,
                format!("diagonal inequality requires p > m = {m}"),
            ));
        }
        let exponent = if p.is_infinite() {
            1.0
        } else {
            p / (p - m as f64)
        };
        let mut inst = Self::base("zalduendo", m, 1, p, exponent, "p/(p-m)", 1.0);
        inst.restriction = Restriction::Repeated(RepetitionPattern::new(vec![m])?);
        Ok(inst)
    }

    /// Looks up a catalog entry by name.
    pub fn by_name(
        name: &str,
        m: usize,
        n: usize,
        p: f64,
        pattern: Option<RepetitionPattern>,
    ) -> Result<Self> {
        match name {
            "littlewood43" | "littlewood" => Ok(Self::littlewood()),
            "bh" => Self::bohnenblust_hille(m),
            "diag43" => Self::diagonal_43(n),
            "diag" => Self::diagonal_general(m, n),
            "repeated43" => {
                let pattern = match pattern {
                    Some(p) => p,
                    None => RepetitionPattern::new(vec![n.div_ceil(2), n / 2])?,
                };
                Self::uni_repeated(pattern)
            }
            "dim43" => Self::multilinear_43_dimension(m),
            "hl-pp" => Self::hardy_littlewood_pp(m, p),
            "hl-dsp" => Self::hardy_littlewood_dsp(m, p),
            "prop90" => Self::holder_witness(m, p),
            "zalduendo" => Self::zalduendo(m, p),
            other => Err(LabError::invalid(format!("unknown instance `{other}`"))),
        }
    }

    /// Replaces the constant. A caller-supplied constant is checked as a
    /// claim: exact-norm ratios above 1 count as violations.
    pub fn with_constant(mut self, constant: f64) -> Self {
        self.constant = constant;
        self.proven = true;
        self
    }

    pub fn with_core_dim(mut self, core_dim: usize) -> Self {
        self.core_dim = Some(core_dim);
        self
    }

    /// Number of bijections a diagonal restriction consumes.
    pub fn bijection_slots(&self) -> usize {
        match self.restriction {
            Restriction::Diagonal => self.arity - self.core,
            _ => 0,
        }
    }

    pub fn ball(&self) -> Result<BallSpec> {
        BallSpec::new(self.p)
    }

    /// Left-hand side for `t`.
    pub fn lhs(&self, t: &CoefficientTensor, sigmas: &[BijectionSpec]) -> Result<f64> {
        if t.order() != self.arity {
            return Err(LabError::OrderMismatch {
                expected: self.arity,
                found: t.order(),
            });
        }
        match &self.restriction {
            Restriction::Full => {
                if !sigmas.is_empty() {
                    return Err(LabError::invalid(format!(
                        "{} takes no bijections",
                        self.name
                    )));
                }
                crate::norms::mixed_power_sum(t, self.exponent)
            }
            Restriction::Diagonal => {
                diagonal_restriction_sum(t, self.core, sigmas, self.exponent, self.core_dim)
            }
            Restriction::Repeated(pattern) => repeated_index_sum(t, pattern, self.exponent),
        }
    }
}

fn render_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".to_string()
    } else {
        p.to_string()
    }
}

fn serialize_p<S: Serializer>(p: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render_p(*p))
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub instance: String,
    pub dim: usize,
    pub core: usize,
    pub arity: usize,
    #[serde(serialize_with = "serialize_p")]
    pub p: f64,
    pub exponent: f64,
    pub lhs: f64,
    pub constant: f64,
    pub factor: f64,
    pub norm: NormResult,
    /// `lhs / (C F(N) ||U||)`, 0 when `lhs` is 0.
    pub ratio: f64,
    /// Exact norm and a valid constant; only these ratios can fail a check.
    pub certified: bool,
    pub seed: Option<u64>,
}

impl RatioReport {
    /// Certified and above `1 + tol`.
    pub fn violates(&self, tol: f64) -> bool {
        self.certified && self.ratio > 1.0 + tol
    }
}

/// Evaluates both sides of `inst` for `t`.
pub fn check_instance(
    inst: &InequalityInstance,
    t: &CoefficientTensor,
    sigmas: &[BijectionSpec],
    method: NormMethod,
) -> Result<RatioReport> {
    let lhs = inst.lhs(t, sigmas)?;
    let (norm, seed) = match method {
        NormMethod::ExactLinf => {
            if !inst.p.is_infinite() {
                return Err(LabError::invalid(format!(
                    "exact norms need an l_inf domain; {} uses p = {}",
                    inst.name, inst.p
                )));
            }
            (sup_norm_linf_exact(t)?, None)
        }
        NormMethod::Ascent { restarts, seed } => {
            (sup_norm_ascent(t, inst.ball()?, restarts, seed), Some(seed))
        }
    };
    let factor = inst.factor.at(t.dim());
    let denom = inst.constant * factor * norm.value;
    let ratio = if lhs == 0.0 {
        0.0
    } else if denom == 0.0 {
        f64::INFINITY
    } else {
        lhs / denom
    };
    Ok(RatioReport {
        instance: inst.name.clone(),
        dim: t.dim(),
        core: inst.core,
        arity: inst.arity,
        p: inst.p,
        exponent: inst.exponent,
        lhs,
        constant: inst.constant,
        factor,
        certified: norm.exact && inst.proven,
        norm,
        ratio,
        seed,
    })
}

/// Diagonal check `(sum_i |a_{i...i}|^{p/(p-m)})^{(p-m)/p} <= ||t||`, norm over
/// `l_p^N` by ascent.
pub fn zalduendo_check(
    t: &CoefficientTensor,
    p: f64,
    restarts: usize,
    seed: u64,
) -> Result<RatioReport> {
    let inst = InequalityInstance::zalduendo(t.order(), p)?;
    check_instance(&inst, t, &[], NormMethod::Ascent { restarts, seed })
}

/// One line of the catalog listing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub m: &'static str,
    pub n: &'static str,
    pub p_domain: &'static str,
    pub rho: &'static str,
    pub constant: String,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "name={} m={} n={} p={} rho={} C={}",
            self.name, self.m, self.n, self.p_domain, self.rho, self.constant
        )
    }
}

/// Every catalog entry with its constant rendered at order `m`.
pub fn catalog_entries(m: usize) -> Vec<CatalogEntry> {
    let fmt6 = |v: f64| format!("{v:.6}");
    vec![
        CatalogEntry {
            name: "littlewood43",
            m: "2",
            n: "2",
            p_domain: "inf",
            rho: "4/3",
            constant: fmt6(std::f64::consts::SQRT_2),
        },
        CatalogEntry {
            name: "bh",
            m: "m",
            n: "m",
            p_domain: "inf",
            rho: "2m/(m+1)",
            constant: fmt6(bh_constant_real(m)),
        },
        CatalogEntry {
            name: "diag43",
            m: "2",
            n: "n>=3",
            p_domain: "inf",
            rho: "4/3",
            constant: fmt6(std::f64::consts::SQRT_2),
        },
        CatalogEntry {
            name: "diag",
            m: "m",
            n: "n>m",
            p_domain: "inf",
            rho: "2m/(m+1)",
            constant: fmt6(bh_constant_real(m)),
        },
        CatalogEntry {
            name: "repeated43",
            m: "2",
            n: "n",
            p_domain: "inf",
            rho: "4/3",
            constant: format!("{} (complex)", fmt6(bh_constant_complex(2))),
        },
        CatalogEntry {
            name: "dim43",
            m: "m",
            n: "m",
            p_domain: "inf",
            rho: "4/3",
            constant: format!("{}*N^((m-2)/4) (complex)", fmt6(bh_constant_complex(m))),
        },
        CatalogEntry {
            name: "hl-pp",
            m: "m",
            n: "m",
            p_domain: "[2m,inf]",
            rho: "2mp/(mp+p-2m)",
            constant: "unknown (1 used)".into(),
        },
        CatalogEntry {
            name: "hl-dsp",
            m: "m",
            n: "m",
            p_domain: "(m,2m]",
            rho: "p/(p-m)",
            constant: "unknown (1 used)".into(),
        },
        CatalogEntry {
            name: "prop90",
            m: "2",
            n: "m>=3",
            p_domain: "(m,2m]",
            rho: "p/(p-m)",
            constant: "unknown (1 used)".into(),
        },
        CatalogEntry {
            name: "zalduendo",
            m: "1",
            n: "m",
            p_domain: "(m,inf]",
            rho: "p/(p-m)",
            constant: fmt6(1.0),
        },
    ]
}

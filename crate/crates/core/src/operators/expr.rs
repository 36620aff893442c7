//! Operator expressions and their action on polynomials.

use std::fmt;

use crate::algebra::{Coefficient, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Id,
    /// `E_var^power`.
    E { var: String, power: i64 },
    Fd(String),
    Bd(String),
    Qfd(String),
    QId(String),
    QE(String),
    /// `E_x^-1 + E_y - E_x^-1 E_y`.
    Strict(String, String),
    /// `E_x^-1 + E_y - (2-Q) E_x^-1 E_y`.
    QStrict(String, String),
    /// `E_x + E_y - (2-Q) E_x E_y`.
    T(String, String),
    ScalarMul(Coefficient),
    Compose(Vec<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
    Power(Box<OperatorExpr>, u32),
}

impl OperatorExpr {
    pub fn e(var: &str, power: i64) -> Self {
        Self::E { var: var.to_string(), power }
    }

    pub fn qfd(var: &str) -> Self {
        Self::Qfd(var.to_string())
    }

    pub fn qid(var: &str) -> Self {
        Self::QId(var.to_string())
    }

    pub fn scalar(c: Coefficient) -> Self {
        Self::ScalarMul(c)
    }

    pub fn neg(self) -> Self {
        Self::Compose(vec![Self::ScalarMul(Coefficient::from_int(-1)), self])
    }

    pub fn pow(self, e: u32) -> Self {
        Self::Power(Box::new(self), e)
    }

    pub fn then_apply(ops: Vec<OperatorExpr>) -> Self {
        Self::Compose(ops)
    }

    /// Variables the expression refers to.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Self::Id | Self::ScalarMul(_) => {}
            Self::E { var, .. } | Self::Fd(var) | Self::Bd(var) | Self::Qfd(var) | Self::QId(var) | Self::QE(var) => {
                out.push(var.clone())
            }
            Self::Strict(x, y) | Self::QStrict(x, y) | Self::T(x, y) => {
                out.push(x.clone());
                out.push(y.clone());
            }
            Self::Compose(v) | Self::Sum(v) => v.iter().for_each(|e| e.collect_vars(out)),
            Self::Power(e, _) => e.collect_vars(out),
        }
    }

    /// Returns the coefficient if the expression is a pure scalar.
    pub fn as_scalar(&self) -> Option<Coefficient> {
        match self {
            Self::ScalarMul(c) => Some(c.clone()),
            Self::Id => Some(Coefficient::one()),
            Self::Compose(v) => v.iter().try_fold(Coefficient::one(), |acc, e| Some(&acc * &e.as_scalar()?)),
            Self::Sum(v) => v.iter().try_fold(Coefficient::zero(), |acc, e| Some(&acc + &e.as_scalar()?)),
            Self::Power(e, k) => Some(e.as_scalar()?.pow(*k)),
            _ => None,
        }
    }
}

fn two_minus_q() -> Coefficient {
    Coefficient::from_int(2) - Coefficient::q()
}

fn shift(p: &MultiPoly, var: &str, amount: i64) -> Result<MultiPoly> {
    p.shift(var, amount)
}

fn forward_difference(p: &MultiPoly, idx: usize) -> MultiPoly {
    p.shift_index(idx, 1) - p
}

/// `Q^-1 sum_i (Q^-1 - 1)^i Fd^(i+1) p`, a finite sum on polynomials.
fn q_forward_difference(p: &MultiPoly, idx: usize) -> MultiPoly {
    let ratio = Coefficient::q_pow(-1) - Coefficient::one();
    let mut factor = Coefficient::q_pow(-1);
    let mut diff = forward_difference(p, idx);
    let mut acc = MultiPoly::zero(p.vars());
    while !diff.is_zero() {
        acc = acc + diff.scale(&factor);
        diff = forward_difference(&diff, idx);
        factor = &factor * &ratio;
    }
    acc
}

/// Applies an operator expression to a polynomial.
pub fn apply_operator(op: &OperatorExpr, p: &MultiPoly) -> Result<MultiPoly> {
    for v in op.variables() {
        if !p.vars().contains(&v) {
            return Err(Error::UnknownVariable(v));
        }
    }
    apply(op, p)
}

fn apply(op: &OperatorExpr, p: &MultiPoly) -> Result<MultiPoly> {
    use OperatorExpr as O;
    Ok(match op {
        O::Id => p.clone(),
        O::E { var, power } => shift(p, var, *power)?,
        O::Fd(v) => forward_difference(p, p.index_of(v)?),
        O::Bd(v) => p - shift(p, v, -1)?,
        O::Qfd(v) => q_forward_difference(p, p.index_of(v)?),
        O::QId(v) => shift(p, v, 1)?.scale(&(Coefficient::q() - Coefficient::one())) + p,
        O::QE(v) => p.scale(&(Coefficient::q() - Coefficient::one())) + shift(p, v, 1)?,
        O::Strict(x, y) | O::QStrict(x, y) => {
            let c = if matches!(op, O::Strict(..)) { Coefficient::one() } else { two_minus_q() };
            let ex = shift(p, x, -1)?;
            let ey = shift(p, y, 1)?;
            let exy = shift(&ex, y, 1)?;
            ex + ey - exy.scale(&c)
        }
        O::T(x, y) => {
            let ex = shift(p, x, 1)?;
            let ey = shift(p, y, 1)?;
            let exy = shift(&ex, y, 1)?;
            ex + ey - exy.scale(&two_minus_q())
        }
        O::ScalarMul(c) => p.scale(c),
        O::Compose(v) => {
            let mut acc = p.clone();
            for e in v.iter().rev() {
                acc = apply(e, &acc)?;
            }
            acc
        }
        O::Sum(v) => {
            let mut acc = MultiPoly::zero(p.vars());
            for e in v {
                acc = acc + apply(e, p)?;
            }
            acc
        }
        O::Power(e, k) => {
            let mut acc = p.clone();
            for _ in 0..*k {
                acc = apply(e, &acc)?;
            }
            acc
        }
    })
}

fn needs_parens(e: &OperatorExpr) -> bool {
    matches!(e, OperatorExpr::Sum(_) | OperatorExpr::Compose(_) | OperatorExpr::ScalarMul(_))
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OperatorExpr as O;
        match self {
            O::Id => write!(f, "Id"),
            O::E { var, power } => {
                if *power == 1 {
                    write!(f, "E_{{{var}}}")
                } else {
                    write!(f, "E_{{{var}}}^{power}")
                }
            }
            O::Fd(v) => write!(f, "Fd_{{{v}}}"),
            O::Bd(v) => write!(f, "Bd_{{{v}}}"),
            O::Qfd(v) => write!(f, "Qfd_{{{v}}}"),
            O::QId(v) => write!(f, "QId_{{{v}}}"),
            O::QE(v) => write!(f, "QE_{{{v}}}"),
            O::Strict(x, y) => write!(f, "S_{{{x},{y}}}"),
            O::QStrict(x, y) => write!(f, "QS_{{{x},{y}}}"),
            O::T(x, y) => write!(f, "T_{{{x},{y}}}"),
            O::ScalarMul(c) => write!(f, "({c})"),
            O::Compose(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|e| if matches!(e, O::Sum(_)) { format!("({e})") } else { e.to_string() })
                    .collect();
                write!(f, "{}", parts.join(" * "))
            }
            O::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
            O::Power(e, k) => {
                if needs_parens(e) {
                    write!(f, "({e})^{k}")
                } else {
                    write!(f, "{e}^{k}")
                }
            }
        }
    }
}

use conepoly::areaform::{basis_condition, gram, Inertia};
use conepoly::{
    closed_form_signature, epsilon, numeric_signature, p_of, q_of, recursive_signature,
    standard_basis, Complex64, CurvatureData, Result, Signature,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    All,
    Closed,
    Numeric,
    Recursive,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericPart {
    #[serde(rename = "P")]
    pub positive: usize,
    #[serde(rename = "N")]
    pub negative: usize,
    #[serde(rename = "Z")]
    pub zero: usize,
    pub tolerance: f64,
    pub basis_condition: f64,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct SignaturePart {
    #[serde(rename = "P")]
    pub positive: usize,
    #[serde(rename = "N")]
    pub negative: usize,
}

impl From<Signature> for SignaturePart {
    fn from(s: Signature) -> Self {
        SignaturePart {
            positive: s.positive,
            negative: s.negative,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SignatureReport {
    pub kappa_tokens: Vec<String>,
    pub n: usize,
    pub dim: usize,
    pub epsilon: usize,
    pub q: usize,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericPart>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recursive: Option<SignaturePart>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed: Option<SignaturePart>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<[f64; 2]>>>,
}

pub fn complex_rows(m: &nalgebra::DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
        .collect()
}

pub fn build(
    tokens: Vec<String>,
    kappa: &CurvatureData,
    method: Method,
    tol: Option<f64>,
    with_gram: bool,
) -> Result<SignatureReport> {
    let wants = |m: Method| method == Method::All || method == m;
    let eps = epsilon(kappa);
    let numeric = if wants(Method::Numeric) {
        let basis = standard_basis(kappa);
        let Inertia {
            positive,
            negative,
            zero,
            tolerance_used,
        } = numeric_signature(kappa, tol)?;
        Some(NumericPart {
            positive,
            negative,
            zero,
            tolerance: tolerance_used,
            basis_condition: basis_condition(basis.vectors()),
        })
    } else {
        None
    };
    let closed = if wants(Method::Closed) {
        Some(closed_form_signature(kappa)?.into())
    } else {
        None
    };
    let recursive = if wants(Method::Recursive) {
        Some(recursive_signature(kappa)?.into())
    } else {
        None
    };
    let gram = if with_gram {
        let basis = standard_basis(kappa);
        Some(complex_rows(gram(kappa, &basis)?.entries()))
    } else {
        None
    };

    let mut pairs: Vec<SignaturePart> = Vec::new();
    if let Some(n) = &numeric {
        pairs.push(SignaturePart {
            positive: n.positive,
            negative: n.negative,
        });
    }
    pairs.extend(closed);
    pairs.extend(recursive);
    let agree =
        pairs.windows(2).all(|w| w[0] == w[1]) && numeric.as_ref().is_none_or(|n| n.zero == eps);

    Ok(SignatureReport {
        kappa_tokens: tokens,
        n: kappa.n(),
        dim: kappa.dim(),
        epsilon: eps,
        q: q_of(kappa),
        p: p_of(kappa)?,
        numeric,
        recursive,
        closed,
        agree,
        gram,
    })
}

impl SignatureReport {
    pub fn human(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!(
            "kappa      = ({}) · π-units",
            self.kappa_tokens.join(", ")
        ));
        line(format!("n = {}, dim = {}", self.n, self.dim));
        line(format!(
            "epsilon = {}, q = {}, p = {}",
            self.epsilon, self.q, self.p
        ));
        if let Some(c) = &self.closed {
            line(format!(
                "closed     (P, N)    = ({}, {})",
                c.positive, c.negative
            ));
        }
        if let Some(r) = &self.recursive {
            line(format!(
                "recursive  (P, N)    = ({}, {})",
                r.positive, r.negative
            ));
        }
        if let Some(n) = &self.numeric {
            line(format!(
                "numeric    (P, N, Z) = ({}, {}, {})  tol = {:e}, basis condition = {:.3e}",
                n.positive, n.negative, n.zero, n.tolerance, n.basis_condition
            ));
        }
        if let Some(g) = &self.gram {
            line("gram:".to_string());
            for row in g {
                let cells: Vec<String> = row
                    .iter()
                    .map(|[re, im]| format!("{:+.6}{:+.6}i", re + 0.0, im + 0.0))
                    .collect();
                line(format!("  [{}]", cells.join(", ")));
            }
        }
        line(format!("agree = {}", self.agree));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conepoly::{parse_curvature, AngleTuple};

    #[test]
    fn one_positive_family_report() {
        let k = parse_curvature("1/2,1/2,1/2,1/2,1").unwrap();
        let r = build(k.tokens(), &k, Method::All, None, false).unwrap();
        assert_eq!(
            r.closed,
            Some(SignaturePart {
                positive: 1,
                negative: 3
            })
        );
        let n = r.numeric.as_ref().unwrap();
        assert_eq!((n.positive, n.negative, n.zero), (1, 3, 0));
        assert!(r.agree);
    }

    #[test]
    fn single_method_skips_the_others() {
        let k = parse_curvature("1,1").unwrap();
        let r = build(k.tokens(), &k, Method::Closed, None, false).unwrap();
        assert!(r.numeric.is_none() && r.recursive.is_none());
        assert!(r.agree);
    }
}

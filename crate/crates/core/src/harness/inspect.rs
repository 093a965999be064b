//! Everything the exact tools can say about a single word.

use std::fmt;

use serde::Serialize;

use crate::dyck::{dyck_decompose, variant_bound, variant_phi, Sign, VariantParams};
use crate::error::Result;
use crate::flip::enumerate_flips;
use crate::oracle::{expected_convergence_exact, MAX_EXACT_LEN};
use crate::word::Configuration;

/// A Dyck factor with 1-based inclusive positions.
#[derive(Debug, Clone, Serialize)]
pub struct FactorView {
    pub first: usize,
    pub last: usize,
    pub height: i64,
    pub sign: Sign,
    pub ones: usize,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VariantView {
    pub alpha: f64,
    pub phi: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WordReport {
    pub word: String,
    pub length: usize,
    pub energy: usize,
    pub volume: u64,
    pub flips: usize,
    pub allowed_flips: usize,
    pub exact_t: Option<f64>,
    pub notice: Option<String>,
    pub variants: Vec<VariantView>,
    pub decomposition: Vec<FactorView>,
}

pub fn inspect_word(w: &Configuration, alphas: &[f64]) -> Result<WordReport> {
    let params = alphas
        .iter()
        .map(|&a| VariantParams::new(a))
        .collect::<Result<Vec<_>>>()?;
    let flips = enumerate_flips(w);
    let (exact_t, notice) = if w.len() <= MAX_EXACT_LEN {
        (expected_convergence_exact(w.len())?.get(w), None)
    } else {
        (
            None,
            Some(format!(
                "exact E(T) omitted: length {} exceeds {MAX_EXACT_LEN}",
                w.len()
            )),
        )
    };
    let variants = if w.is_empty() {
        Vec::new()
    } else {
        params
            .iter()
            .map(|&p| {
                Ok(VariantView {
                    alpha: p.alpha(),
                    phi: variant_phi(w, p)?,
                    bound: variant_bound(w, p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?
    };
    let text = w.to_string();
    let decomposition = dyck_decompose(w)
        .into_iter()
        .map(|f| FactorView {
            first: f.start + 1,
            last: f.end,
            height: f.height,
            sign: f.sign,
            ones: f.ones,
            text: text[f.start..f.end].to_string(),
        })
        .collect();
    Ok(WordReport {
        word: text,
        length: w.len(),
        energy: w.energy(),
        volume: w.volume().value(),
        flips: flips.len(),
        allowed_flips: flips.iter().filter(|f| f.class().is_allowed()).count(),
        exact_t,
        notice,
        variants,
        decomposition,
    })
}

impl fmt::Display for WordReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word: {}", self.word)?;
        writeln!(f, "length: {}", self.length)?;
        writeln!(f, "energy: {}", self.energy)?;
        writeln!(f, "volume: {}", self.volume)?;
        writeln!(f, "flips: {} ({} allowed)", self.flips, self.allowed_flips)?;
        match (self.exact_t, &self.notice) {
            (Some(t), _) => writeln!(f, "exact E(T): {t}")?,
            (None, Some(n)) => writeln!(f, "{n}")?,
            (None, None) => {}
        }
        for v in &self.variants {
            writeln!(f, "alpha {}: phi = {}, bound = {}", v.alpha, v.phi, v.bound)?;
        }
        writeln!(f, "maximal Dyck factors:")?;
        for d in &self.decomposition {
            let sign = match d.sign {
                Sign::Positive => '+',
                Sign::Negative => '-',
            };
            writeln!(
                f,
                "  [{}..{}] height {} sign {} ones {} {}",
                d.first, d.last, d.height, sign, d.ones, d.text
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_word() {
        let r = inspect_word(&"1122".parse().unwrap(), &[0.5]).unwrap();
        assert_eq!(r.exact_t, Some(1.0));
        assert_eq!(r.decomposition.len(), 2);
        assert_eq!((r.decomposition[0].first, r.decomposition[0].last), (1, 4));
        assert_eq!(r.decomposition[1].text, "12");
        assert_eq!((r.decomposition[1].first, r.decomposition[1].last), (2, 3));
    }

    #[test]
    fn ground_state() {
        let r = inspect_word(&"1212".parse().unwrap(), &[0.25, 0.5]).unwrap();
        assert_eq!(r.exact_t, Some(0.0));
        assert_eq!(r.decomposition.len(), 1);
        assert_eq!(r.variants.len(), 2);
    }

    #[test]
    fn long_word_omits_exact_time() {
        let w: Configuration = "11211121222112212222211222112111211212".parse().unwrap();
        let r = inspect_word(&w, &[0.5]).unwrap();
        assert_eq!(r.energy, 18);
        assert_eq!(r.exact_t, None);
        assert!(r.notice.as_deref().unwrap().contains("38"));
        assert!(r.to_string().contains("energy: 18"));
    }
}

use super::{CorankData, StairsError};
use crate::registry::{Named, Registry};

/// A family of Hermitian symmetric domains, parameterised by the text
/// after the colon in a preset string such as `sp:2`.
pub trait GroupPreset: Named {
    fn syntax(&self) -> &'static str;
    fn build(&self, args: &str) -> Result<CorankData, StairsError>;
}

fn invalid(msg: impl Into<String>) -> StairsError {
    StairsError::InvalidParams(msg.into())
}

fn number(s: &str) -> Result<usize, StairsError> {
    s.trim().parse().map_err(|_| invalid(format!("`{s}` is not a nonnegative integer")))
}

fn simple(n: usize, n_seq: Vec<usize>, c: usize) -> Result<CorankData, StairsError> {
    let mut cd = CorankData::new(n, n_seq, c)?;
    cd.q_simple = true;
    Ok(cd)
}

/// Sp(2g, ℚ): Siegel space of genus g.
struct Symplectic;
/// O(2, n): type IV domains.
struct Orthogonal;
/// U(p, q).
struct Unitary;
/// `custom:n:n1,n2,…:c`.
struct Custom;

impl Named for Symplectic {
    fn name(&self) -> &'static str {
        "sp"
    }
}

impl GroupPreset for Symplectic {
    fn syntax(&self) -> &'static str {
        "sp:<g>, g > 1"
    }

    fn build(&self, args: &str) -> Result<CorankData, StairsError> {
        let g = number(args)?;
        if g < 2 {
            return Err(invalid("Sp(g) needs g > 1"));
        }
        simple(g * (g + 1) / 2, (1..=g).map(|i| i * (i + 1) / 2).collect(), g)
    }
}

impl Named for Orthogonal {
    fn name(&self) -> &'static str {
        "o2n"
    }
}

impl GroupPreset for Orthogonal {
    fn syntax(&self) -> &'static str {
        "o2n:<n>, n ≥ 3"
    }

    fn build(&self, args: &str) -> Result<CorankData, StairsError> {
        let n = number(args)?;
        if n < 3 {
            return Err(invalid("O(2,n) needs n ≥ 3"));
        }
        simple(n, vec![1, n], n - 1)
    }
}

impl Named for Unitary {
    fn name(&self) -> &'static str {
        "u"
    }
}

impl GroupPreset for Unitary {
    fn syntax(&self) -> &'static str {
        "u:<p>,<q>, 1 ≤ p ≤ q"
    }

    fn build(&self, args: &str) -> Result<CorankData, StairsError> {
        let (p, q) = args.split_once(',').ok_or_else(|| invalid("expected u:<p>,<q>"))?;
        let (p, q) = (number(p)?, number(q)?);
        if p == 0 || p > q {
            return Err(invalid("U(p,q) needs 1 ≤ p ≤ q"));
        }
        simple(p * q, (1..=p).map(|i| i * i).collect(), p + q - 1)
    }
}

impl Named for Custom {
    fn name(&self) -> &'static str {
        "custom"
    }
}

impl GroupPreset for Custom {
    fn syntax(&self) -> &'static str {
        "custom:<n>:<n1>,<n2>,...:<c>"
    }

    fn build(&self, args: &str) -> Result<CorankData, StairsError> {
        let parts: Vec<&str> = args.split(':').collect();
        let [n, seq, c] = parts[..] else {
            return Err(invalid(format!("expected {}", self.syntax())));
        };
        let n_seq = seq.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
        CorankData::new(number(n)?, n_seq, number(c)?)
    }
}

pub fn presets() -> Registry<dyn GroupPreset> {
    let mut r: Registry<dyn GroupPreset> = Registry::new("group preset");
    r.register(Box::new(Symplectic))
        .register(Box::new(Orthogonal))
        .register(Box::new(Unitary))
        .register(Box::new(Custom));
    r
}

/// Parses `name:args`, e.g. `sp:2`, `o2n:5`, `u:2,3`, `custom:5:2,5:3`.
pub fn parse_preset(spec: &str) -> Result<CorankData, StairsError> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    presets().get(name)?.build(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siegel_genus_two() {
        let cd = parse_preset("sp:2").unwrap();
        assert_eq!((cd.n, cd.n_seq.clone(), cd.c), (3, vec![1, 3], 2));
        assert!(cd.tube_domain());
    }

    #[test]
    fn unitary_two_three() {
        let cd = parse_preset("u:2,3").unwrap();
        assert_eq!((cd.n, cd.n_seq.clone(), cd.c), (6, vec![1, 4], 4));
        assert!(!cd.tube_domain());
    }

    #[test]
    fn orthogonal_five() {
        let cd = parse_preset("o2n:5").unwrap();
        assert_eq!((cd.n, cd.n_seq.clone(), cd.c), (5, vec![1, 5], 4));
    }

    #[test]
    fn custom_and_errors() {
        let cd = parse_preset("custom:5:2,5:3").unwrap();
        assert_eq!((cd.n, cd.n_seq.clone(), cd.c, cd.q_simple), (5, vec![2, 5], 3, false));
        assert!(parse_preset("sp:1").is_err());
        assert!(parse_preset("o2n:2").is_err());
        assert!(parse_preset("u:3,2").is_err());
        assert!(matches!(parse_preset("gl:3"), Err(StairsError::Unknown(_))));
    }
}

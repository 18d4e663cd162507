//! Front end for the `pq` binary: export records, run manifests, caching and
//! the `verify` checks.

pub mod record;
pub mod run;
pub mod verify;

use paramedial::affine::GroupDescriptor;
use paramedial::Error;

/// Parses `cyclic P K` or `elem2 P`.
pub fn parse_group(words: &[String]) -> Result<GroupDescriptor, String> {
    let num = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| format!("expected a number, got {s:?}"))
    };
    let group = match words {
        [kind, p, k] if kind == "cyclic" => {
            let k = u32::try_from(num(k)?).map_err(|_| format!("exponent {k} is too large"))?;
            GroupDescriptor::cyclic(num(p)?, k)
        }
        [kind, p] if kind == "elem2" => GroupDescriptor::elem2(num(p)?),
        _ => {
            return Err(format!(
                "expected `cyclic P K` or `elem2 P`, got `{}`",
                words.join(" ")
            ))
        }
    };
    group.map_err(|e: Error| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn group_words() {
        assert_eq!(parse_group(&words("cyclic 3 2")).unwrap().order(), 9);
        assert_eq!(parse_group(&words("elem2 5")).unwrap().order(), 25);
        assert!(parse_group(&words("cyclic 3")).is_err());
        assert!(parse_group(&words("elem2 4")).is_err());
        assert!(parse_group(&words("elem3 3")).is_err());
    }
}

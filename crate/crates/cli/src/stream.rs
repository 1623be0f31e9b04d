use anyhow::{anyhow, bail, Context, Result};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use regwin::automata::{Alphabet, Symbol};

/// Input stream description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamSpec {
    /// i.i.d. symbols; `distribution` holds one weight per alphabet symbol,
    /// uniform when absent.
    Random {
        seed: u64,
        length: usize,
        #[serde(default)]
        distribution: Option<Vec<f64>>,
    },
    /// `w_f^n x y^k z`.
    Adversarial { w_f: String, x: String, y: String, z: String, n: usize, k: usize },
    Literal { word: String },
    /// `block^repeats`.
    Periodic { block: String, repeats: usize },
}

impl StreamSpec {
    /// Parses the command-line form: a JSON object, or one of
    /// `literal:WORD`, `periodic:BLOCK:REPEATS`, `random:SEED:LENGTH[:W1,W2,..]`
    /// and `adversarial:WF,X,Y,Z,N,K`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).context("parsing stream JSON");
        }
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let number = |s: &str, what: &str| -> Result<usize> {
            s.parse().map_err(|_| anyhow!("stream {kind}: {what} must be a number, got {s:?}"))
        };
        Ok(match kind {
            "literal" => StreamSpec::Literal { word: rest.to_string() },
            "periodic" => {
                let (block, repeats) =
                    rest.rsplit_once(':').ok_or_else(|| anyhow!("expected periodic:BLOCK:REPEATS"))?;
                StreamSpec::Periodic { block: block.to_string(), repeats: number(repeats, "repeats")? }
            }
            "random" => {
                let parts: Vec<&str> = rest.split(':').collect();
                if !(2..=3).contains(&parts.len()) {
                    bail!("expected random:SEED:LENGTH[:WEIGHTS]");
                }
                let distribution = match parts.get(2) {
                    None => None,
                    Some(w) => Some(
                        w.split(',')
                            .map(|x| x.parse::<f64>().map_err(|_| anyhow!("bad weight {x:?}")))
                            .collect::<Result<Vec<_>>>()?,
                    ),
                };
                StreamSpec::Random {
                    seed: parts[0].parse().map_err(|_| anyhow!("bad seed {:?}", parts[0]))?,
                    length: number(parts[1], "length")?,
                    distribution,
                }
            }
            "adversarial" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 6 {
                    bail!("expected adversarial:WF,X,Y,Z,N,K");
                }
                StreamSpec::Adversarial {
                    w_f: parts[0].to_string(),
                    x: parts[1].to_string(),
                    y: parts[2].to_string(),
                    z: parts[3].to_string(),
                    n: number(parts[4], "n")?,
                    k: number(parts[5], "k")?,
                }
            }
            other => bail!("unknown stream kind {other:?}"),
        })
    }

    /// Checks symbols and weights against the alphabet.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        let words: Vec<&str> = match self {
            StreamSpec::Random { distribution, .. } => {
                if let Some(w) = distribution {
                    if w.len() != alphabet.len() {
                        bail!("distribution has {} weights for {} symbols", w.len(), alphabet.len());
                    }
                    WeightedIndex::new(w).map_err(|e| anyhow!("invalid distribution: {e}"))?;
                }
                Vec::new()
            }
            StreamSpec::Adversarial { w_f, x, y, z, .. } => vec![w_f, x, y, z],
            StreamSpec::Literal { word } => vec![word],
            StreamSpec::Periodic { block, .. } => vec![block],
        };
        for w in words {
            alphabet.encode(w)?;
        }
        Ok(())
    }

    /// Lazy symbol sequence.
    pub fn symbols<'a>(&'a self, alphabet: &'a Alphabet) -> Result<Box<dyn Iterator<Item = Symbol> + 'a>> {
        self.validate(alphabet)?;
        let enc = |w: &str| alphabet.encode(w).expect("validated");
        Ok(match self {
            StreamSpec::Random { seed, length, distribution } => {
                let weights = distribution.clone().unwrap_or_else(|| vec![1.0; alphabet.len()]);
                let dist = WeightedIndex::new(weights).expect("validated");
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Box::new((0..*length).map(move |_| dist.sample(&mut rng)))
            }
            StreamSpec::Adversarial { w_f, x, y, z, n, k } => {
                let (w_f, x, y, z) = (enc(w_f), enc(x), enc(y), enc(z));
                Box::new(
                    std::iter::repeat_n(w_f, *n)
                        .flatten()
                        .chain(x)
                        .chain(std::iter::repeat_n(y, *k).flatten())
                        .chain(z),
                )
            }
            StreamSpec::Literal { word } => Box::new(enc(word).into_iter()),
            StreamSpec::Periodic { block, repeats } => {
                Box::new(std::iter::repeat_n(enc(block), *repeats).flatten())
            }
        })
    }

    pub fn generate(&self, alphabet: &Alphabet) -> Result<Vec<Symbol>> {
        Ok(self.symbols(alphabet)?.collect())
    }
}

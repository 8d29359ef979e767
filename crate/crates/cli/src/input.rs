use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use monohull::{Instance, Rational};
use serde::Deserialize;

use crate::Failure;

/// A comma-separated list of rationals such as `1,2/3,0.5`.
#[derive(Clone, Debug)]
pub struct RatList(pub Vec<Rational>);

impl FromStr for RatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        monohull::rational::parse_list(s)
            .map(RatList)
            .map_err(|e| e.to_string())
    }
}

impl fmt::Display for RatList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rational::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct InstanceArgs {
    /// Number of variables.
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Lower bound of the last variable.
    #[arg(long = "an", allow_hyphen_values = true)]
    pub an: Option<Rational>,
    /// Upper bounds `b1,...,bn`.
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: Option<RatList>,
    /// Lower bounds `a1,a2` (McCormick only).
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Option<RatList>,
    /// JSON file with the same fields: `{"n": 3, "an": "1", "b": ["1", "1", "2"]}`.
    /// Flags given on the command line take precedence.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: Option<usize>,
    an: Option<Rational>,
    b: Option<Vec<Rational>>,
    a: Option<Vec<Rational>>,
}

fn read_file(path: &Path) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("invalid instance file {}: {e}", path.display())))
}

/// Instance arguments with the file merged in.
struct Merged {
    n: Option<usize>,
    an: Option<Rational>,
    b: Option<Vec<Rational>>,
    a: Option<Vec<Rational>>,
}

impl InstanceArgs {
    fn merged(&self) -> Result<Merged, Failure> {
        let file = match &self.instance {
            Some(path) => read_file(path)?,
            None => InstanceFile::default(),
        };
        Ok(Merged {
            n: self.n.or(file.n),
            an: self.an.clone().or(file.an),
            b: self.b.clone().map(|l| l.0).or(file.b),
            a: self.a.clone().map(|l| l.0).or(file.a),
        })
    }

    /// The box for the one-lower-bound systems. `default_an` fills in a
    /// missing `--an`.
    pub fn instance_with_default(&self, default_an: Option<Rational>) -> Result<Instance, Failure> {
        let m = self.merged()?;
        let b =
            m.b.ok_or_else(|| Failure::Input("missing upper bounds --b".to_string()))?;
        let n = m.n.unwrap_or(b.len());
        if n < 2 {
            return Err(Failure::Input(format!("need n >= 2, got n = {n}")));
        }
        if b.len() != n {
            return Err(Failure::Input(format!(
                "n = {n} but {} upper bounds were given",
                b.len()
            )));
        }
        let an =
            m.an.or(default_an)
                .ok_or_else(|| Failure::Input("missing lower bound --an".to_string()))?;
        Instance::new(n, an, b).map_err(Failure::from)
    }

    pub fn instance(&self) -> Result<Instance, Failure> {
        self.instance_with_default(None)
    }

    /// Lower and upper bounds for the two-variable McCormick system.
    pub fn mccormick_bounds(&self) -> Result<([Rational; 2], [Rational; 2]), Failure> {
        let m = self.merged()?;
        let pair = |name: &str, v: Option<Vec<Rational>>| -> Result<[Rational; 2], Failure> {
            let v = v.ok_or_else(|| Failure::Input(format!("missing --{name} for mccormick")))?;
            <[Rational; 2]>::try_from(v)
                .map_err(|v| Failure::Input(format!("--{name} needs 2 values, got {}", v.len())))
        };
        if let Some(n) = m.n.filter(|&n| n != 2) {
            return Err(Failure::Input(format!(
                "mccormick needs n = 2, got n = {n}"
            )));
        }
        Ok((pair("a", m.a)?, pair("b", m.b)?))
    }
}

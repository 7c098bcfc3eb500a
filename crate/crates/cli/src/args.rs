use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unitri::rootcomb::{compute_lsets, enumerate_lambda_s, AVector};
use unitri::unitri::NondegChar;
use unitri::{Caps, Prime, Root, RootTables, Subset};

#[derive(Parser, Debug, Clone)]
#[command(name = "unitri", version, about = "Exact orbit-method computations for UT(n, F_q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Resource limits, e.g. `group=1000000,orbit=100000`.
    #[arg(long, global = true, value_parser = parse_caps, default_value = "group=1000000,orbit=100000")]
    pub caps: Caps,
    /// Worker threads; 0 uses every core. Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for sampled spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time per check.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// The roots in coordinate order and their partition.
    Roots(CaseArgs),
    /// The sets L_S with p_S and the parameter counts, for one S or all.
    Lsets(LsetsArgs),
    /// Decompose V(lambda) into the components V_{S,a}.
    Decompose(DecomposeArgs),
    /// One canonical form: its orbit, polarization and equations.
    Orbit(OrbitArgs),
    /// Orbit equations for every canonical form, and orbit separation.
    Ideal(CaseArgs),
    /// The Hecke algebra basis and its commutativity.
    Hecke(HeckeArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Values of lambda on Π0 ∪ Π as `i,j=v;...`; the standard character if
    /// omitted.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct LsetsArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// `i,j;...`, `empty` or `all`; every subset if omitted.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Also compute every multiplicity as an inner product over the group.
    #[arg(long)]
    pub slow: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long)]
    pub subset: String,
    /// Values on L_S^0 ⊔ L_S^00 ⊔ L_S^- in coordinate order, comma separated;
    /// the first admissible vector if omitted.
    #[arg(long)]
    pub a: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct HeckeArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Check commutativity on at most this many pairs.
    #[arg(long)]
    pub pairs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    pub level: Level,
    /// Read the worked-example fixtures from this directory instead of the
    /// built-in copies.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

/// Bad input, reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

pub fn parse_caps(text: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{}`", part))?;
        let value: u128 = value.trim().parse().map_err(|_| format!("bad number in `{}`", part))?;
        match key.trim() {
            "group" => caps.group = value,
            "orbit" => caps.orbit = usize::try_from(value).map_err(|_| format!("orbit cap too large: {}", value))?,
            other => return Err(format!("unknown cap `{}`", other)),
        }
    }
    Ok(caps)
}

fn parse_root(t: &RootTables, text: &str) -> Result<Root, UsageError> {
    let (i, j) = text.split_once(',').ok_or_else(|| usage(format!("expected `i,j`, got `{}`", text)))?;
    let i: usize = i.trim().parse().map_err(|_| usage(format!("bad row in `{}`", text)))?;
    let j: usize = j.trim().parse().map_err(|_| usage(format!("bad column in `{}`", text)))?;
    t.root(i, j).map_err(|e| usage(e.to_string()))
}

pub fn tables(n: usize) -> Result<RootTables, UsageError> {
    RootTables::new(n).map_err(|e| usage(e.to_string()))
}

pub fn prime(q: u32) -> Result<Prime, UsageError> {
    Prime::new(q).map_err(|e| usage(e.to_string()))
}

/// `i,j=v;...` over Π0 ∪ Π. Missing entries are 0 on Π0 \ Π and an error
/// on Π \ Π0.
pub fn parse_lambda(t: &RootTables, p: Prime, text: Option<&str>) -> Result<NondegChar, UsageError> {
    let Some(text) = text else {
        return Ok(NondegChar::standard(t, p));
    };
    let mut values: Vec<(Root, u32)> = Vec::new();
    for entry in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (root, value) = entry.split_once('=').ok_or_else(|| usage(format!("expected `i,j=v`, got `{}`", entry)))?;
        let r = parse_root(t, root)?;
        if !t.in_pi0(r) && !t.in_pi(r) {
            return Err(usage(format!("lambda is only set on Π0 ∪ Π; {} is outside", r)));
        }
        let v: i64 = value.trim().parse().map_err(|_| usage(format!("bad value in `{}`", entry)))?;
        if values.iter().any(|(x, _)| *x == r) {
            return Err(usage(format!("{} given twice", r)));
        }
        values.push((r, v.rem_euclid(i64::from(p.get())) as u32));
    }
    for &r in &t.pi {
        if !t.in_pi0(r) && !values.iter().any(|(x, _)| *x == r) {
            return Err(usage(format!("lambda is degenerate: a nonzero value at {} is required", r)));
        }
    }
    NondegChar::new(t, p, &values).map_err(|e| usage(e.to_string()))
}

pub fn parse_subset(t: &RootTables, text: &str) -> Result<Subset, UsageError> {
    match text.trim() {
        "" | "empty" => return Ok(Subset::empty(t)),
        "all" | "pi" => return Ok(Subset::full(t)),
        _ => {}
    }
    let roots = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|r| parse_root(t, r))
        .collect::<Result<Vec<_>, _>>()?;
    Subset::from_roots(t, &roots).map_err(|e| usage(e.to_string()))
}

pub fn parse_a(t: &RootTables, p: Prime, s: &Subset, text: Option<&str>) -> Result<AVector, UsageError> {
    let lsets = compute_lsets(t, s);
    let Some(text) = text else {
        return enumerate_lambda_s(&lsets, p).into_iter().next().ok_or_else(|| usage("the parameter space is empty"));
    };
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|v| {
            v.parse::<i64>()
                .map(|x| x.rem_euclid(i64::from(p.get())) as u32)
                .map_err(|_| usage(format!("bad value `{}` in a", v)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    AVector::new(&lsets, values, p).map_err(|e| usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_syntax() {
        let t = tables(5).unwrap();
        let p = prime(3).unwrap();
        let chi = parse_lambda(&t, p, Some("1,4=1;2,3=0")).unwrap();
        assert_eq!(chi.value(&t, Root::new(1, 4)), 1);
        assert_eq!(chi.value(&t, Root::new(2, 3)), 0);
        assert_eq!(parse_lambda(&t, p, Some("1,4=-1")).unwrap().value(&t, Root::new(1, 4)), 2);
        assert!(parse_lambda(&t, p, Some("2,3=1")).is_err());
        assert!(parse_lambda(&t, p, Some("1,4=0")).is_err());
        assert!(parse_lambda(&t, p, Some("1,3=1;1,4=1")).is_err());
        assert!(parse_lambda(&t, p, Some("1,4")).is_err());
        assert_eq!(parse_lambda(&t, p, None).unwrap(), NondegChar::standard(&t, p));
    }

    #[test]
    fn subsets_and_parameters() {
        let t = tables(5).unwrap();
        let p = prime(3).unwrap();
        assert_eq!(parse_subset(&t, "empty").unwrap(), Subset::empty(&t));
        assert_eq!(parse_subset(&t, "2,3;1,4").unwrap(), Subset::full(&t));
        assert!(parse_subset(&t, "1,2").is_err());
        let s = parse_subset(&t, "1,4").unwrap();
        assert_eq!(parse_a(&t, p, &s, Some("2,0")).unwrap().values, vec![2, 0]);
        assert!(parse_a(&t, p, &s, Some("0,1")).is_err());
        assert_eq!(parse_a(&t, p, &s, None).unwrap().values, vec![1, 0]);
    }

    #[test]
    fn caps_syntax() {
        let c = parse_caps("group=50,orbit=7").unwrap();
        assert_eq!((c.group, c.orbit), (50, 7));
        assert_eq!(parse_caps("orbit=3").unwrap().group, Caps::default().group);
        assert!(parse_caps("size=3").is_err());
    }
}

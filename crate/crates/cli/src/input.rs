use std::fs;
use std::path::PathBuf;

use clap::Args;
use coxlat::star::{
    catalog, lattice_from_json, parse_alpha_list, star_alphas_from_labels, validate, OrbitInvariants,
    SingularityKind, StarLattices, CENTER_LABEL,
};
use coxlat::verify::{infer_kind, subject_of};
use coxlat::{Error, Result};

/// Exactly one of these selects the singularity or lattice.
#[derive(Args, Debug, Default)]
#[group(id = "source", multiple = false)]
pub struct InputArgs {
    /// Kleinian orbit data from the arm lengths, e.g. `2,3,5`
    #[arg(long, value_name = "A,B,..")]
    pub kleinian: Option<String>,
    /// Fuchsian orbit data from the arm lengths, e.g. `2,3,7`
    #[arg(long, value_name = "A,B,..")]
    pub fuchsian: Option<String>,
    /// Catalog name (`E8`, `D5`, `A3`, `E12`, ...); see `coxlat catalog`
    #[arg(long, value_name = "NAME")]
    pub name: Option<String>,
    /// Orbit invariants as JSON: `{"kind":"fuchsian","alpha":[2,3,7]}` or
    /// `{"g":0,"b":1,"pairs":[[2,1],[3,1],[7,1]]}`
    #[arg(long, value_name = "FILE.json")]
    pub invariants: Option<PathBuf>,
    /// Gram matrix of V- as `{"labels":[..],"gram":[[..]]}`, or the output
    /// of `build --format json`
    #[arg(long, value_name = "FILE.json")]
    pub gram: Option<PathBuf>,
}

pub struct Input {
    pub label: String,
    /// Validated invariants, or those recovered from star labels.
    pub invariants: Option<(OrbitInvariants, SingularityKind)>,
    pub lattices: StarLattices,
    /// Whether the lattices were built from the invariants rather than read.
    pub built: bool,
}

impl InputArgs {
    pub fn is_given(&self) -> bool {
        self.kleinian.is_some()
            || self.fuchsian.is_some()
            || self.name.is_some()
            || self.invariants.is_some()
            || self.gram.is_some()
    }

    pub fn resolve(&self) -> Result<Input> {
        let (prefix, inv) = if let Some(a) = &self.kleinian {
            (None, OrbitInvariants::kleinian(&parse_alpha_list(a)?))
        } else if let Some(a) = &self.fuchsian {
            (None, OrbitInvariants::fuchsian(&parse_alpha_list(a)?))
        } else if let Some(n) = &self.name {
            (Some(n.clone()), catalog(n)?)
        } else if let Some(path) = &self.invariants {
            (None, OrbitInvariants::from_json(&read(path)?)?)
        } else if let Some(path) = &self.gram {
            return from_gram(path);
        } else {
            return Err(Error::InvalidInput(
                "no input: give one of --kleinian, --fuchsian, --name, --invariants, --gram".into(),
            ));
        };
        let kind = validate(&inv)?;
        let lattices = StarLattices::from_alphas(&inv.alphas())?;
        let subject = subject_of(kind, &inv.alphas());
        let label = match prefix {
            Some(p) if p != subject => format!("{p} {subject}"),
            _ => subject,
        };
        Ok(Input { label, invariants: Some((inv, kind)), lattices, built: true })
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn from_gram(path: &PathBuf) -> Result<Input> {
    let minus = lattice_from_json(&read(path)?)?;
    if minus.rank() == 0 {
        return Err(Error::Dimension("empty Gram matrix".into()));
    }
    let center = minus.index_of(CENTER_LABEL).unwrap_or(minus.rank() - 1);
    let invariants = star_alphas_from_labels(minus.labels())
        .and_then(|alpha| infer_kind(&alpha).map(|k| (OrbitInvariants::of_kind(k, &alpha), k)));
    let lattices = StarLattices::from_minus(minus, center)?;
    Ok(Input { label: path.display().to_string(), invariants, lattices, built: false })
}

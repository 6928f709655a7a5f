use super::config::{Coef, FunctionSpec};
use crate::numcore::{CatalogFunction, ComplexPoly, C64};
use crate::{Error, Result};

/// Catalog identifiers accepted by [`catalog_lookup`].
pub const CATALOG_IDS: [&str; 6] = ["poly", "rational", "geom", "exp", "lacunary-factorial", "random-radius-one"];

fn poly(coefs: &Option<Vec<Coef>>, what: &str, id: &str) -> Result<ComplexPoly> {
    let coefs = coefs.as_ref().ok_or_else(|| Error::Config(format!("function {id} needs coefficient list {what}")))?;
    if coefs.is_empty() {
        return Err(Error::Config(format!("coefficient list {what} is empty")));
    }
    let c = coefs
        .iter()
        .map(|c| match *c {
            Coef::Real(x) => C64::new(x, 0.0),
            Coef::Complex([re, im]) => C64::new(re, im),
        })
        .collect::<Vec<_>>();
    if c.iter().any(|z| !z.is_finite()) {
        return Err(Error::Config(format!("non-finite coefficient in {what}")));
    }
    Ok(ComplexPoly::new(c))
}

fn no_extra(spec: &FunctionSpec, p: bool, q: bool, seed: bool) -> Result<()> {
    let bad = (spec.p.is_some() && !p) || (spec.q.is_some() && !q) || (spec.seed.is_some() && !seed);
    if bad {
        return Err(Error::Config(format!("unexpected parameters for function {}", spec.id)));
    }
    Ok(())
}

/// Resolve a catalog id with its parameters.
pub fn catalog_lookup(spec: &FunctionSpec) -> Result<CatalogFunction> {
    let id = spec.id.as_str();
    let f = match id {
        "poly" => {
            no_extra(spec, true, false, false)?;
            CatalogFunction::polynomial(poly(&spec.p, "p", id)?)
        }
        "rational" => {
            no_extra(spec, true, true, false)?;
            CatalogFunction::rational(poly(&spec.p, "p", id)?, poly(&spec.q, "q", id)?)
                .map_err(|e| Error::Config(e.to_string()))?
        }
        "geom" => {
            no_extra(spec, false, false, false)?;
            CatalogFunction::geometric()
        }
        "exp" => {
            no_extra(spec, false, false, false)?;
            CatalogFunction::exp()
        }
        "lacunary-factorial" => {
            no_extra(spec, false, false, false)?;
            CatalogFunction::lacunary_factorial()
        }
        "random-radius-one" => {
            no_extra(spec, false, false, true)?;
            CatalogFunction::random_radius_one(spec.seed.unwrap_or(0))
        }
        other => {
            return Err(Error::Config(format!("unknown function id {other:?} (known: {})", CATALOG_IDS.join(", "))))
        }
    };
    match spec.rescale {
        None => Ok(f),
        Some(rho) if rho.is_finite() && rho > 0.0 => Ok(f.rescaled(rho)),
        Some(rho) => Err(Error::Config(format!("rescale factor {rho} must be positive"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(catalog_lookup(&FunctionSpec::id("geom")).unwrap().rho_known(), Some(1.0));
        assert_eq!(catalog_lookup(&FunctionSpec::id("lacunary-factorial")).unwrap().rho_known(), Some(f64::INFINITY));
        let spec = FunctionSpec {
            p: Some(vec![Coef::Real(1.0), Coef::Real(1.0)]),
            q: Some(vec![Coef::Real(1.0), Coef::Complex([-2.0, 0.0])]),
            ..FunctionSpec::id("rational")
        };
        let f = catalog_lookup(&spec).unwrap();
        assert!((f.rho_known().unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(catalog_lookup(&FunctionSpec::id("sinc")), Err(Error::Config(_))));
        assert!(matches!(catalog_lookup(&FunctionSpec::id("poly")), Err(Error::Config(_))));
    }
}

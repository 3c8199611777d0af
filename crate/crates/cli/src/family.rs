use superderiv::liecons::CartanFamily;
use superderiv::suite::AlgebraSpec;

use crate::commands::CliError;
use crate::BuildArgs;

fn need<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("family {family} needs --{flag}")))
}

/// Turn `alg build` arguments into a buildable spec.
pub fn spec_from_args(a: &BuildArgs) -> Result<AlgebraSpec, CliError> {
    use AlgebraSpec::*;
    let f = a.family.as_str();
    let n = || need(&a.n, "n", f);
    let m = || need(&a.m, "m", f);
    Ok(match f.to_ascii_lowercase().as_str() {
        "w" => W { n: n()? },
        "s" => S { n: n()? },
        "stilde" => Stilde { n: n()? },
        "h" => H { n: n()? },
        "sl" => Sl { m: m()?, n: n()? },
        "mplus" => Mplus { m: m()?, n: n()? },
        "qplus" => Qplus { n: n()? },
        "p" => P { n: n()? },
        "osp" => Osp { n: n()?, m: m()? },
        "jvf" => Jvf {
            n0: need(&a.n0, "n0", f)?,
            n1: need(&a.n1, "n1", f)?,
        },
        "dt" => Dt {
            t: need(&a.t, "t", f)?,
        },
        "k3" => K3,
        "k10" => K10,
        "jgamma" => JGamma { n: n()? },
        "hermitian" => Hermitian { n: n()? },
        "h2" => Hermitian { n: 2 },
        "h3" => Hermitian { n: 3 },
        "hermitiansum" | "hermitian-sum" => HermitianSum { n: n()? },
        "m2" => M2,
        "quasim2" | "quasi-m2" => QuasiM2 {
            lambda: need(&a.lambda, "lambda", f)?,
        },
        _ => return Err(CliError::Usage(format!("unknown family {f:?}"))),
    })
}

pub fn cartan_family(name: &str) -> Result<CartanFamily, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "w" => Ok(CartanFamily::W),
        "s" => Ok(CartanFamily::S),
        "stilde" => Ok(CartanFamily::Stilde),
        "h" => Ok(CartanFamily::H),
        _ => Err(CliError::Usage(format!(
            "unknown Cartan family {name:?}; expected W, S, Stilde or H"
        ))),
    }
}

/// Read `W(3)`, `Stilde(4)` and similar algebra names back into a family and rank.
pub fn cartan_from_name(name: &str) -> Option<(CartanFamily, usize)> {
    let (head, rest) = name.split_once('(')?;
    let n = rest.strip_suffix(')')?.parse().ok()?;
    Some((cartan_family(head).ok()?, n))
}

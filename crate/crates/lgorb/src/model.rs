//! Model descriptions: a potential, a group presentation, and build
//! options, read from a sectioned key-value file or taken from a named
//! preset. Building a model picks the working coefficient field, reduces
//! the group modulus to the smallest faithful one, and assembles the
//! sector algebra.

use crate::error::{Error, Result};
use crate::group::{generate_group, GroupElement};
use crate::milnor::LocalMode;
use crate::orbifold::TwistedAlgebra;
use crate::parse::parse_poly;
use crate::poly::MultiPoly;
use crate::scalar::CycField;
use crate::twisted_jacobian::{compare, decompose, jac_prime, CompareReport};
use num::integer::{gcd, lcm};

#[derive(Clone, Debug, Default)]
pub struct ModelConfig {
    pub name: Option<String>,
    pub potential: String,
    pub nvars: usize,
    /// Cyclotomic order of the group presentation.
    pub order: u64,
    pub generators: Vec<Vec<i64>>,
    pub local: Option<String>,
    /// Some(true) forces the doubled field, Some(false) forbids it,
    /// None doubles exactly when a comparison needs it.
    pub double_field: Option<bool>,
    /// Explicit coefficient field order, overriding the automatic choice.
    pub field_order: Option<u64>,
    /// Degree cap for quotient stabilization.
    pub d_max: Option<u32>,
}

impl ModelConfig {
    /// Parses the sectioned key-value model format:
    ///
    /// ```text
    /// [model]
    /// nvars = 2
    /// W = x1^3*x2 + x2^4
    ///
    /// [group]
    /// order = 12
    /// generators = 1,9
    ///
    /// [options]
    /// local = auto
    /// ```
    ///
    /// `generators` takes semicolon-separated exponent vectors. A `genus`
    /// key in `[model]` fills in the whole surface model, with explicit
    /// keys taking precedence.
    pub fn parse(text: &str) -> Result<ModelConfig> {
        let mut section = "";
        let mut genus: Option<u64> = None;
        let mut cfg = ModelConfig::default();
        let mut seen_w = false;
        let mut seen_group = (false, false);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = match name {
                    "model" => "model",
                    "group" => "group",
                    "options" => "options",
                    other => {
                        return Err(Error::Config(format!(
                            "line {}: unknown section [{other}]",
                            lineno + 1
                        )))
                    }
                };
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected key = value",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            let int = |what: &str| -> Result<u64> {
                value.parse::<u64>().map_err(|_| {
                    Error::Config(format!("line {}: {what} must be an integer", lineno + 1))
                })
            };
            match (section, key) {
                ("model", "name") => cfg.name = Some(value.to_string()),
                ("model", "W") => {
                    cfg.potential = value.to_string();
                    seen_w = true;
                }
                ("model", "nvars") => cfg.nvars = int("nvars")? as usize,
                ("model", "genus") => genus = Some(int("genus")?),
                ("group", "order") => {
                    cfg.order = int("order")?;
                    seen_group.0 = true;
                }
                ("group", "generators") => {
                    cfg.generators = parse_generators(value)
                        .map_err(|m| Error::Config(format!("line {}: {m}", lineno + 1)))?;
                    seen_group.1 = true;
                }
                ("options", "local") => cfg.local = Some(value.to_string()),
                ("options", "double_field") => {
                    cfg.double_field = Some(match value {
                        "true" => true,
                        "false" => false,
                        _ => {
                            return Err(Error::Config(format!(
                                "line {}: double_field must be true or false",
                                lineno + 1
                            )))
                        }
                    })
                }
                ("options", "field_order") => cfg.field_order = Some(int("field_order")?),
                ("options", "d_max") => cfg.d_max = Some(int("d_max")? as u32),
                ("", k) => {
                    return Err(Error::Config(format!(
                        "line {}: key {k} before any section",
                        lineno + 1
                    )))
                }
                (s, k) => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {k} in [{s}]",
                        lineno + 1
                    )))
                }
            }
        }
        if let Some(g) = genus {
            let base = surface_config(g);
            if !seen_w {
                cfg.potential = base.potential;
                cfg.nvars = base.nvars;
            }
            if !seen_group.0 {
                cfg.order = base.order;
            }
            if !seen_group.1 {
                cfg.generators = base.generators;
            }
            if cfg.name.is_none() {
                cfg.name = base.name;
            }
        }
        if cfg.potential.is_empty() {
            return Err(Error::Config("missing W in [model]".into()));
        }
        if cfg.nvars == 0 {
            return Err(Error::Config("missing or zero nvars in [model]".into()));
        }
        if cfg.order == 0 {
            return Err(Error::Config("missing or zero order in [group]".into()));
        }
        if cfg.generators.is_empty() {
            return Err(Error::Config("missing generators in [group]".into()));
        }
        Ok(cfg)
    }

    pub fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "model".into())
    }
}

fn parse_generators(value: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    let mut out = Vec::new();
    for chunk in value.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let mut gen = Vec::new();
        for entry in chunk.split(',') {
            gen.push(
                entry
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| format!("bad generator entry '{}'", entry.trim()))?,
            );
        }
        out.push(gen);
    }
    if out.is_empty() {
        return Err("generators is empty".into());
    }
    Ok(out)
}

/// A named builtin model.
pub fn preset(name: &str) -> Result<ModelConfig> {
    match name {
        "x3_z3" => Ok(make_config(name, "x1^3".into(), 1, 3, vec![vec![1]])),
        "chain33" => Ok(chain_config(3, 3)),
        "chain34" => Ok(chain_config(3, 4)),
        "chain43" => Ok(chain_config(4, 3)),
        "fermat33" => Ok(make_config(
            name,
            "x1^3 + x2^3".into(),
            2,
            3,
            vec![vec![1, 0], vec![0, 1]],
        )),
        "surface2" => Ok(surface_config(2)),
        "surface3" => Ok(surface_config(3)),
        _ => Err(Error::Config(format!(
            "unknown preset '{name}'; available: x3_z3, chain33, chain34, chain43, fermat33, surface2, surface3"
        ))),
    }
}

fn make_config(
    name: &str,
    potential: String,
    nvars: usize,
    order: u64,
    generators: Vec<Vec<i64>>,
) -> ModelConfig {
    ModelConfig {
        name: Some(name.into()),
        potential,
        nvars,
        order,
        generators,
        ..ModelConfig::default()
    }
}

/// The two-variable chain with the full symmetry group of the potential.
pub fn chain_config(a1: u64, a2: u64) -> ModelConfig {
    let m = a1 * a2;
    make_config(
        &format!("chain{a1}{a2}"),
        format!("x1^{a1}*x2 + x2^{a2}"),
        2,
        m,
        vec![vec![1, (m - a1) as i64]],
    )
}

/// The genus-g curve singularity with its cyclic symmetry.
pub fn surface_config(genus: u64) -> ModelConfig {
    let d = 2 * genus + 1;
    make_config(
        &format!("surface{genus}"),
        format!("x1^{d} + x2^{d} + x3^{d} - x1*x2*x3"),
        3,
        d,
        vec![vec![1, 1, (d - 2) as i64]],
    )
}

/// The direct sum of two models on disjoint variables, over the least
/// common symmetry modulus.
pub fn tensor_config(a: &ModelConfig, b: &ModelConfig) -> Result<ModelConfig> {
    if a.potential.contains("zeta") || b.potential.contains("zeta") {
        return Err(Error::Config(
            "tensor models need potentials with rational coefficients".into(),
        ));
    }
    let na = a.nvars;
    let nb = b.nvars;
    let m = lcm(a.order, b.order);
    let ka = (m / a.order) as i64;
    let kb = (m / b.order) as i64;
    let mut generators = Vec::new();
    for g in &a.generators {
        let mut e: Vec<i64> = g.iter().map(|&v| v * ka).collect();
        e.extend(std::iter::repeat_n(0, nb));
        generators.push(e);
    }
    for g in &b.generators {
        let mut e = vec![0i64; na];
        e.extend(g.iter().map(|&v| v * kb));
        generators.push(e);
    }
    Ok(ModelConfig {
        name: Some(format!("tensor({},{})", a.name(), b.name())),
        potential: format!(
            "{} + {}",
            a.potential,
            shift_potential_text(&b.potential, na)
        ),
        nvars: na + nb,
        order: m,
        generators,
        ..ModelConfig::default()
    })
}

/// Renames every variable token x<k> to x<k+shift>.
fn shift_potential_text(text: &str, shift: usize) -> String {
    let mut out = String::with_capacity(text.len() + 8);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == 'x' && chars.peek().is_some_and(|d| d.is_ascii_digit()) {
            let mut k = 0usize;
            while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                k = k * 10 + d as usize;
                chars.next();
            }
            out.push('x');
            out.push_str(&(k + shift).to_string());
        } else {
            out.push(c);
        }
    }
    out
}

/// A built model: the sector algebra together with the choices made
/// while building it.
pub struct Model {
    pub config: ModelConfig,
    pub algebra: TwistedAlgebra,
    pub modulus: u64,
    pub field_order: u64,
    pub doubled: bool,
}

impl Model {
    /// Builds the sector algebra. `need_compare` widens the coefficient
    /// field when the comparison constants will be requested.
    pub fn build(config: &ModelConfig, need_compare: bool) -> Result<Model> {
        let n = config.nvars;
        if n == 0 {
            return Err(Error::Config("nvars must be positive".into()));
        }
        if config.generators.is_empty() {
            return Err(Error::Config(
                "at least one group generator is required".into(),
            ));
        }
        for g in &config.generators {
            if g.len() != n {
                return Err(Error::Config(format!(
                    "generator ({}) has {} entries, expected {n}",
                    g.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    g.len()
                )));
            }
        }
        let m0 = config.order;
        if m0 == 0 {
            return Err(Error::Config("group order must be positive".into()));
        }
        let zeta_used = config.potential.contains("zeta");
        // the faithful modulus: entries keep their orders, names shrink
        let (modulus, gens) = if zeta_used {
            (
                m0,
                config
                    .generators
                    .iter()
                    .map(|g| GroupElement::new(g.clone(), m0))
                    .collect::<Vec<_>>(),
            )
        } else {
            let mut n_eff = 1u64;
            for g in &config.generators {
                for &e in g {
                    let r = e.rem_euclid(m0 as i64) as u64;
                    if r != 0 {
                        n_eff = lcm(n_eff, m0 / gcd(m0, r));
                    }
                }
            }
            let k = (m0 / n_eff) as i64;
            let gens = config
                .generators
                .iter()
                .map(|g| {
                    GroupElement::new(g.iter().map(|&e| e.rem_euclid(m0 as i64) / k).collect(), n_eff)
                })
                .collect();
            (n_eff, gens)
        };
        let provisional = config.field_order.unwrap_or(modulus);
        if !provisional.is_multiple_of(modulus) {
            return Err(Error::Config(format!(
                "field_order {provisional} is not divisible by the group modulus {modulus}"
            )));
        }
        let field = CycField::new(provisional);
        let w = parse_poly(&config.potential, n, &field)?;
        let group = generate_group(&gens, n, modulus, &w)?;
        let doubling_required = need_compare && needs_doubling(&w, &group);
        let doubled = match config.double_field {
            Some(true) => true,
            Some(false) => {
                if doubling_required {
                    return Err(Error::Config(format!(
                        "the comparison algebra needs a field of order divisible by {}, but double_field = false",
                        2 * modulus
                    )));
                }
                false
            }
            None => doubling_required,
        };
        let field_order = if doubled && !provisional.is_multiple_of(2 * modulus) {
            if config.field_order.is_some() || zeta_used {
                return Err(Error::Config(format!(
                    "the comparison algebra needs a field of order divisible by {}; adjust field_order",
                    2 * modulus
                )));
            }
            2 * modulus
        } else {
            provisional
        };
        let w = if field_order == provisional {
            w
        } else {
            parse_poly(&config.potential, n, &CycField::new(field_order))?
        };
        let local = match config.local.as_deref() {
            None => LocalMode::Auto,
            Some(s) => LocalMode::parse(s)?,
        };
        let d_max = config.d_max.unwrap_or(64);
        let algebra = TwistedAlgebra::build(w, group, local, d_max)?;
        Ok(Model {
            config: config.clone(),
            algebra,
            modulus,
            field_order,
            doubled,
        })
    }

    pub fn name(&self) -> String {
        self.config.name()
    }

    /// Builds the comparison algebra and compares it against the computed
    /// structure constants.
    pub fn compare_jac(&self) -> Result<CompareReport> {
        let jp = jac_prime(&self.algebra)?;
        Ok(compare(&self.algebra, &jp))
    }
}

/// True when some sector has an odd age numerator on some atomic block,
/// which makes the comparison constants live in the doubled field.
fn needs_doubling(w: &MultiPoly, group: &[GroupElement]) -> bool {
    let Ok(blocks) = decompose(w) else {
        return false;
    };
    for g in group {
        for b in &blocks {
            let s: u64 = b.vars.iter().map(|&i| g.exps()[i]).sum();
            if s % 2 == 1 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build_with_expected_fields() {
        let m = Model::build(&preset("x3_z3").unwrap(), true).unwrap();
        assert_eq!((m.modulus, m.field_order, m.doubled), (3, 6, true));
        assert_eq!(m.algebra.order(), 3);

        let m = Model::build(&preset("x3_z3").unwrap(), false).unwrap();
        assert_eq!((m.modulus, m.field_order, m.doubled), (3, 3, false));

        let m = Model::build(&preset("chain34").unwrap(), true).unwrap();
        assert_eq!((m.modulus, m.field_order, m.doubled), (12, 12, false));
        assert_eq!(m.algebra.order(), 12);

        let m = Model::build(&preset("surface2").unwrap(), false).unwrap();
        assert_eq!((m.modulus, m.field_order, m.doubled), (5, 5, false));
        assert_eq!(m.algebra.order(), 5);
        assert_eq!(m.algebra.milnor(m.algebra.identity_index()).dim(), 14);
    }

    #[test]
    fn config_files_parse_and_reduce() {
        let text = "
            # a cubic with a redundant modulus
            [model]
            nvars = 1
            W = x1^3

            [group]
            order = 12
            generators = 4

            [options]
            local = off
        ";
        let config = ModelConfig::parse(text).unwrap();
        let m = Model::build(&config, false).unwrap();
        assert_eq!(m.modulus, 3);
        assert_eq!(m.algebra.order(), 3);

        let text = "
            [model]
            genus = 2
        ";
        let config = ModelConfig::parse(text).unwrap();
        assert_eq!(config.potential, "x1^5 + x2^5 + x3^5 - x1*x2*x3");
        assert_eq!(config.generators, vec![vec![1, 1, 3]]);

        let text = "
            [model]
            nvars = 2
            W = x1^3*x2 + x2^4

            [group]
            order = 12
            generators = 1,9; 2,6
        ";
        let config = ModelConfig::parse(text).unwrap();
        assert_eq!(config.generators.len(), 2);
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(matches!(
            ModelConfig::parse("[model]\nnvars = 1"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ModelConfig::parse("nvars = 1"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            ModelConfig::parse("[model]\nW = x1^3\nnvars = 1\n[group]\norder = 3\ngenerators = 1,2"),
            Err(Error::Config(_)) | Ok(_)
        ));
        let config = ModelConfig::parse(
            "[model]\nW = x1^3\nnvars = 1\n[group]\norder = 3\ngenerators = 1,2",
        )
        .unwrap();
        assert!(matches!(Model::build(&config, false), Err(Error::Config(_))));
    }

    #[test]
    fn double_field_flag_is_respected() {
        let mut config = preset("x3_z3").unwrap();
        config.double_field = Some(true);
        let m = Model::build(&config, false).unwrap();
        assert_eq!((m.field_order, m.doubled), (6, true));
        config.double_field = Some(false);
        assert!(matches!(Model::build(&config, true), Err(Error::Config(_))));
    }

    #[test]
    fn tensor_of_two_cubics_is_the_fermat_pair() {
        let a = preset("x3_z3").unwrap();
        let t = tensor_config(&a, &a).unwrap();
        assert_eq!(t.potential, "x1^3 + x2^3");
        assert_eq!(t.generators, vec![vec![1, 0], vec![0, 1]]);
        let m = Model::build(&t, false).unwrap();
        assert_eq!(m.algebra.order(), 9);
    }

    #[test]
    fn variable_shift_handles_multidigit_names() {
        assert_eq!(shift_potential_text("x1^3*x12 + x2", 10), "x11^3*x22 + x12");
    }
}

use std::fmt::Write as _;
use std::path::Path;

use hereditary::catalog::{
    critical_bichain, critical_poset, endpoint_labels, endpoint_marked_oscillation, exceptional, oscillation_window,
    reference_sequence, simple_permutations, FamilyId, OscillationVariant, ReferenceSequence,
};
use hereditary::classes::{
    bounds, enumerate_avoiders, enumerate_closure, profile, profile_csv, read_archive, sigma_membership,
    write_archive, antichain_pairs,
};
use hereditary::series::{poly_residual, rational_expand, solve_sum_closure};
use hereditary::{decompose, EnumConfig, Error, LevelSets, OrderedStructure, Permutation, Result, Signature};

use crate::input;
use crate::{AntichainArgs, CatalogArgs, Cli, Command, LevelOutput, SeriesCommand};

pub fn run(cli: &Cli) -> Result<String> {
    let config = EnumConfig {
        workers: cli.workers,
        max_candidates: cli.max_candidates,
    };
    match &cli.command {
        Command::Contains { host, pattern, ostruct } => {
            let found = if *ostruct {
                let p = input::structure(Path::new(pattern))?;
                p.embeds_into(&input::structure(Path::new(host))?)?
            } else {
                input::permutation(host)?.contains(&input::permutation(pattern)?)
            };
            Ok(format!("{found}\n"))
        }
        Command::Simple { perm } => Ok(format!("{}\n", input::permutation(perm)?.is_simple())),
        Command::EnumSimple { n, count } => {
            let perms = simple_permutations(*n)?;
            if *count {
                Ok(format!("{}\n", perms.len()))
            } else {
                Ok(perms.iter().map(|p| format!("{p}\n")).collect())
            }
        }
        Command::Decompose { input: arg, ostruct } => {
            let r = if *ostruct {
                input::structure(Path::new(arg))?
            } else {
                input::permutation(arg)?.to_bichain()
            };
            let rendering = decompose(&r)?.render();
            let mut out = format!("{}\n", rendering.sexpr);
            for (k, q) in rendering.quotients.iter().enumerate() {
                let _ = write!(out, "\n@{k}\n{}", q.to_text());
            }
            Ok(out)
        }
        Command::Avoid(args) => {
            let mut basis: Vec<OrderedStructure> = input::permutation_list(&args.basis)?
                .iter()
                .map(Permutation::to_bichain)
                .collect();
            let mut sig = Signature::bichain();
            if let Some(path) = &args.basis_file {
                let from_file = input::structures(path)?;
                if let Some(first) = from_file.first() {
                    sig = first.sig().clone();
                }
                basis.extend(from_file);
            }
            let levels = enumerate_avoiders(&sig, &basis, args.out.max_n, &config)?;
            level_output(&levels, &args.out)
        }
        Command::Closure(args) => {
            let g = &args.generators;
            let spec = input::generators(&g.generators, g.gen_file.as_deref(), &g.family)?;
            let levels = enumerate_closure(&spec, args.out.max_n, &config)?;
            level_output(&levels, &args.out)
        }
        Command::Bounds(args) => {
            let g = &args.generators;
            let spec = input::generators(&g.generators, g.gen_file.as_deref(), &g.family)?;
            spec.check_hereditary(args.max_n)?;
            let found = bounds(
                |r| sigma_membership(r, &spec).unwrap_or(false),
                spec.sig(),
                args.max_n,
                &config,
            )?;
            Ok(render_structures(&found, args.ostruct))
        }
        Command::Profile { archive, include_empty } => {
            let levels = read_archive(archive)?;
            profile_csv(&profile(&levels, *include_empty), *include_empty)
        }
        Command::Series(cmd) => series(cmd),
        Command::Catalog(args) => catalog(args),
        Command::Antichain(args) => antichain(args),
    }
}

fn level_output(levels: &LevelSets, out: &LevelOutput) -> Result<String> {
    if let Some(dir) = &out.archive {
        write_archive(dir, levels)?;
    }
    profile_csv(&profile(levels, out.include_empty), out.include_empty)
}

/// Permutations one per line for bichains, ostruct blocks otherwise.
fn render_structures(items: &[OrderedStructure], ostruct: bool) -> String {
    let as_perms = !ostruct && items.iter().all(|s| s.sig().is_bichain());
    if as_perms {
        items
            .iter()
            .map(|s| format!("{}\n", Permutation::from_bichain(s).expect("bichain")))
            .collect()
    } else {
        items.iter().map(OrderedStructure::to_text).collect::<Vec<_>>().join("\n")
    }
}

fn series(cmd: &SeriesCommand) -> Result<String> {
    match cmd {
        SeriesCommand::Solve { p, k, k_file, order } => {
            let k = match k_file {
                Some(path) => input::series(path)?,
                None => input::integer_series(k, *order)?,
            };
            Ok(solve_sum_closure(*p, &k, *order)?.to_text())
        }
        SeriesCommand::Residual { poly, series } => {
            let q = input::polynomial(poly)?;
            let h = input::series(series)?;
            let r = poly_residual(&q, &h);
            match r.valuation() {
                None => Ok(format!("zero up to order {}\n", r.order())),
                Some(v) => Ok(format!("nonzero from x^{v}\n{}", r.to_text())),
            }
        }
        SeriesCommand::Expand {
            num,
            num_file,
            den,
            den_file,
            order,
        } => {
            let numer = match (num_file, num) {
                (Some(path), _) => input::polynomial(path)?,
                (None, Some(c)) => input::x_polynomial(c)?,
                (None, None) => return Err(Error::InvalidParameter("numerator required".into())),
            };
            let denom = match (den_file, den) {
                (Some(path), _) => input::polynomial(path)?,
                (None, Some(c)) => input::x_polynomial(c)?,
                (None, None) => return Err(Error::InvalidParameter("denominator required".into())),
            };
            Ok(rational_expand(&numer, &denom, *order)?.to_text())
        }
    }
}

fn required(value: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{family} requires --{flag}")))
}

fn catalog(args: &CatalogArgs) -> Result<String> {
    let id: FamilyId = args.family.parse()?;
    let one = |s: OrderedStructure| render_structures(&[s], args.ostruct);
    match id {
        FamilyId::Simple => {
            let n = required(args.n, "n", &args.family)?;
            let members: Vec<OrderedStructure> = simple_permutations(n)?.iter().map(Permutation::to_bichain).collect();
            Ok(render_structures(&members, args.ostruct))
        }
        FamilyId::Exceptional(f) => Ok(one(exceptional(required(args.m, "m", &args.family)?, f)?.to_bichain())),
        FamilyId::CriticalBichain(v) => Ok(one(critical_bichain(required(args.m, "m", &args.family)?, v)?)),
        FamilyId::CriticalPoset(v) => Ok(critical_poset(required(args.n, "n", &args.family)?, v)?.to_text()),
        FamilyId::Oscillation => Ok(one(oscillation_window(
            required(args.n, "n", &args.family)?,
            OscillationVariant::Plain,
        )?)),
        FamilyId::OscillationStar => Ok(one(oscillation_window(
            required(args.n, "n", &args.family)?,
            OscillationVariant::Star,
        )?)),
        FamilyId::FibK | FamilyId::Partitions => {
            let n = required(args.n, "n", &args.family)?;
            let seq = match id {
                FamilyId::FibK => ReferenceSequence::FibK(required(args.k, "k", &args.family)?),
                _ => ReferenceSequence::Partitions,
            };
            let mut out = String::from("n,value\n");
            for i in 0..=n {
                let _ = writeln!(out, "{i},{}", reference_sequence(seq, i)?);
            }
            Ok(out)
        }
    }
}

fn antichain(args: &AntichainArgs) -> Result<String> {
    let (items, poset) = match &args.endpoint_oscillations {
        Some(range) => {
            let (lo, hi) = range
                .split_once("..")
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::InvalidParameter(format!("expected LO..HI, found '{range}'")))?;
            let items = (lo..=hi).map(endpoint_marked_oscillation).collect::<Result<Vec<_>>>()?;
            (items, endpoint_labels())
        }
        None => {
            let path = args.file.as_ref().expect("clap enforces --file");
            (input::labeled(&input::read(path)?)?, input::poset(&args.poset)?)
        }
    };
    let pairs = antichain_pairs(&items, &poset)?;
    if pairs.is_empty() {
        return Ok("antichain\n".into());
    }
    Ok(pairs.iter().map(|(i, j)| format!("{i} {j}\n")).collect())
}

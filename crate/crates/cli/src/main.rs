//! `diskpack`: pack, stab, measure and verify unit-disk instances.
//!
//! Exit status: 0 on success, 1 on invalid input or a failed check, 2 when a
//! geometric computation itself fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diskpack_core::geometry::{s_distance, Disk, ToleranceConfig, UnitVec3, Vec3};
use diskpack_core::io::{
    export_mesh, gen_random_cap, gen_sphere_grid, parse_instance, read_solution, write_instance,
    write_solution, DEFAULT_SEGMENTS,
};
use diskpack_core::packing::{pack, AxisClass, SolverConfig, PACKING_FACTOR};
use diskpack_core::par::Execution;
use diskpack_core::stabbing::{build_distance_matrix_with, realize_stabbing, solve_path, PathSolver};
use diskpack_core::verification::{growth_experiment, verify_packing_with, VerificationReport};
use diskpack_core::Error;

#[derive(Parser)]
#[command(name = "diskpack", version, about = "Approximate box packing of unit disks in 3D")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Slack for case tests in the s-distance computation.
    #[arg(long, global = true)]
    predicate_eps: Option<f64>,
    /// Penetration depth regarded as touching.
    #[arg(long, global = true)]
    overlap_eps: Option<f64>,
    /// Step size at which alternating projection stops.
    #[arg(long, global = true)]
    convergence_eps: Option<f64>,
    /// Iteration cap of alternating projection.
    #[arg(long, global = true)]
    max_iterations: Option<usize>,
    /// Run every computation on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl GlobalOpts {
    fn tolerance(&self) -> Result<ToleranceConfig, Error> {
        let d = ToleranceConfig::default();
        let tol = ToleranceConfig {
            predicate_eps: self.predicate_eps.unwrap_or(d.predicate_eps),
            overlap_eps: self.overlap_eps.unwrap_or(d.overlap_eps),
            convergence_eps: self.convergence_eps.unwrap_or(d.convergence_eps),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
        };
        tol.validate()?;
        Ok(tol)
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Pack an instance and write the solution.
    Pack {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Also write an OBJ mesh of the packing.
        #[arg(long)]
        mesh: Option<PathBuf>,
        /// Rim segments per disk in the mesh.
        #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
        segments: usize,
        /// Classes with at most this many disks are stabbed exactly (≤ 20).
        #[arg(long, default_value_t = 12)]
        exact_threshold: usize,
    },
    /// Stab all disks of an instance along one axis.
    Stab {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        axis: AxisClass,
        #[arg(long, default_value_t = 12)]
        exact_threshold: usize,
    },
    /// s-distance of two disks along a direction.
    Dist {
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        n1: Vec3,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        n2: Vec3,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        s: Vec3,
    },
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Re-check a solution file.
    Verify {
        #[arg(long)]
        solution: PathBuf,
    },
    /// Lower-bound growth on sphere-grid instances.
    Growth {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, default_value_t = 12)]
        exact_threshold: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// √n × √n grid of normals over a c × c square.
    SphereGrid {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Uniform normals in a spherical cap around an axis.
    RandomCap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        axis: AxisClass,
        #[arg(long, allow_hyphen_values = true)]
        max_angle: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

fn parse_vec(s: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
    }
    Ok(Vec3::from(v))
}

/// Fixed twelve decimals with trailing zeros removed.
fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn vec_str(v: Vec3) -> String {
    format!("{} {} {}", num(v.x), num(v.y), num(v.z))
}

fn solver_name(s: PathSolver) -> &'static str {
    match s {
        PathSolver::Exact => "exact",
        PathSolver::Christofides => "christofides",
    }
}

/// A failure and its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_geometry() || matches!(e, Error::Internal(_)) { 2 } else { 1 };
        Failure { code, message: format!("{} [{}]", e, e.code()) }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| fail(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| fail(format!("cannot write {}: {e}", path.display())))
}

fn solver_config(exact_threshold: usize, exec: Execution) -> Result<SolverConfig, Failure> {
    let cfg = SolverConfig { exact_threshold, execution: exec };
    cfg.validate()?;
    Ok(cfg)
}

fn print_report(rep: &VerificationReport) {
    println!("verification: {}", if rep.passed { "pass" } else { "fail" });
    println!("pairs checked: {}", rep.checks);
    println!("worst penetration: {}", num(rep.worst_penetration));
    println!("worst containment violation: {}", num(rep.worst_containment_violation));
    for p in &rep.offending_pairs {
        println!("overlap: disks {} and {} penetrate by {}", p.i, p.j, num(p.penetration));
    }
    for c in &rep.containment_violations {
        println!("outside: disk {} by {}", c.disk, num(c.amount));
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = cli.global.tolerance()?;
    let exec = cli.global.execution();
    match cli.command {
        Command::Pack { input, output, mesh, segments, exact_threshold } => {
            let cfg = solver_config(exact_threshold, exec)?;
            if mesh.is_some() && segments < 3 {
                return Err(Error::InvalidInput(format!("need at least 3 segments, got {segments}")).into());
            }
            let inst = parse_instance(&read(&input)?)?;
            let sol = pack(&inst.disks, &cfg, &tol)?;
            let rep = verify_packing_with(&sol, &tol, exec);
            write(&output, &write_solution(&sol, Some(rep.passed)))?;
            if let Some(path) = mesh {
                write(&path, &export_mesh(&sol, segments)?)?;
            }
            let st = &sol.stats;
            println!("disks: {}", sol.placements.len());
            println!("container: {}", vec_str(sol.container.dims));
            println!("volume: {}", num(st.volume));
            println!("lower bound: {}", num(st.lower_bound.value));
            println!(
                "certified ratio: {}",
                st.certified_ratio.map_or("undefined".into(), num)
            );
            println!(
                "certificate: {} (factor {})",
                if st.certificate_holds { "holds" } else { "violated" },
                num(PACKING_FACTOR)
            );
            println!("verification: {}", if rep.passed { "pass" } else { "fail" });
            if !rep.passed {
                return Err(fail("packing failed verification"));
            }
            if !st.certificate_holds {
                return Err(fail("volume certificate violated"));
            }
        }
        Command::Stab { input, axis, exact_threshold } => {
            solver_config(exact_threshold, exec)?;
            let inst = parse_instance(&read(&input)?)?;
            let s = UnitVec3::axis(axis.index());
            let m = build_distance_matrix_with(&inst.disks, s, &tol, exec)?;
            let (order, solver) = solve_path(&m, exact_threshold)?;
            let (st, _) = realize_stabbing(&inst.disks, &order, s, &tol)?;
            let ids: Vec<String> = order.as_slice().iter().map(usize::to_string).collect();
            println!("length: {}", num(st.length));
            println!("solver: {}", solver_name(solver));
            println!("ordering: {}", ids.join(","));
        }
        Command::Dist { n1, n2, s } => {
            let d1 = Disk::new(n1)?;
            let d2 = Disk::new(n2)?;
            let s = UnitVec3::new(s)?;
            println!("{}", num(s_distance(&d1, &d2, s, &tol)?));
        }
        Command::Gen(GenCommand::SphereGrid { n, c, output }) => {
            let inst = gen_sphere_grid(n, c)?;
            write(&output, &write_instance(&inst))?;
            println!("wrote {} disks to {}", inst.disks.len(), output.display());
        }
        Command::Gen(GenCommand::RandomCap { n, axis, max_angle, seed, output }) => {
            let inst = gen_random_cap(n, axis, max_angle, seed)?;
            write(&output, &write_instance(&inst))?;
            println!("wrote {} disks to {}", inst.disks.len(), output.display());
        }
        Command::Verify { solution } => {
            let doc = read_solution(&read(&solution)?)?;
            let rep = verify_packing_with(&doc.solution, &tol, exec);
            print_report(&rep);
            let st = &doc.solution.stats;
            let volume = doc.solution.container.volume();
            let holds = volume <= PACKING_FACTOR * st.lower_bound.value * (1.0 + 1e-9);
            println!("volume: {}", num(volume));
            println!("lower bound: {}", num(st.lower_bound.value));
            println!("certificate: {}", if holds { "holds" } else { "violated" });
            if !rep.passed {
                return Err(fail("solution failed verification"));
            }
            if !holds {
                return Err(fail("volume certificate violated"));
            }
        }
        Command::Growth { sizes, c, exact_threshold } => {
            let cfg = solver_config(exact_threshold, exec)?;
            let rep = growth_experiment(&sizes, c, &cfg, &tol)?;
            println!("n\tepsilon\tmin_distance\tstab_bound\tlower_bound\tvolume\tratio");
            for r in &rep.rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.n,
                    num(r.epsilon),
                    num(r.min_distance),
                    num(r.stab_length_bound),
                    num(r.lower_bound.value),
                    num(r.packed_volume),
                    r.certified_ratio.map_or("undefined".into(), num)
                );
            }
            let slope = |s: Option<f64>| s.map_or("undefined".into(), num);
            println!("lower bound slope: {}", slope(rep.lower_bound_slope));
            println!("stab bound slope: {}", slope(rep.stab_bound_slope));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

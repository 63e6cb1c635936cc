//! The `ppclab` command line: `ppclab <subcommand> [--key value]...`.
//!
//! Exit codes: 0 on success, 2 on usage errors (the message names the
//! offending key), 1 on runtime failures such as I/O or guard refusals.

mod args;
mod commands;

use std::io::Write;

pub use args::{parse_config, Args, GLOBAL_KEYS};

use crate::error::{Error, Result};

pub const USAGE: &str = "\
usage: ppclab <subcommand> [--key value]... [--config file] [--threads k]

subcommands:
  generate    --spec S --n N [--out file]
  ppc         --spec S --n N [--beta b] [--s list] [--method naive|grid|auto] [--out file]
  disc        --spec S --n N [--mode M] [--m k] [--cd c] [--ladder list] [--out file]
              modes: exact1d_star exact1d_extreme brute_star brute_extreme ket_bound scaling
  kernel      --lemma L ... [--out file]
              lemma21  --r list --rp list --eps e [--case c]
              remark22 --r list --eps e
              lemma22  --alpha A --r vector --n list --delta list
              lemma23  --alpha A --eps e --n list --rmax R --delta d --c c
              lemma24  --rp list --sigma list --rmax R
              density  --x vector --eps e
  experiment  --experiment ppc_convergence|expectation|variance_decay|beta_sweep
              --spec S [--ladder list] [--s list] [--beta list] [--seeds list]
              [--tolerance t] [--method m] [--out dir]

Config files hold one key=value per line; `#` starts a comment. Flags
override the file. Integer lists accept half-open ranges such as 0..50.
PPCLAB_THREADS is used when --threads is absent.
";

/// Runs one invocation and returns the process exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(argv, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(argv: &[String], stdout: &mut dyn Write) -> Result<()> {
    let Some(sub) = argv.first() else {
        return Err(Error::usage("subcommand", "missing; try `ppclab help`"));
    };
    let flags = &argv[1..];
    let (allowed, cmd): (&[&str], fn(&Args, &mut dyn Write) -> Result<()>) = match sub.as_str() {
        "help" | "--help" | "-h" => {
            stdout.write_all(USAGE.as_bytes()).map_err(|e| Error::io("<stdout>", e))?;
            return Ok(());
        }
        "generate" => (commands::GENERATE_KEYS, commands::cmd_generate),
        "ppc" => (commands::PPC_KEYS, commands::cmd_ppc),
        "disc" => (commands::DISC_KEYS, commands::cmd_disc),
        "kernel" => (commands::KERNEL_KEYS, commands::cmd_kernel),
        "experiment" => (commands::EXPERIMENT_KEYS, commands::cmd_experiment),
        other => return Err(Error::usage("subcommand", format!("unknown subcommand {other:?}"))),
    };
    let args = Args::parse(flags, allowed)?;
    let threads = thread_count(&args)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::usage("threads", format!("cannot build thread pool: {e}")))?;
    let mut buf = Vec::new();
    pool.install(|| cmd(&args, &mut buf))?;
    stdout.write_all(&buf).map_err(|e| Error::io("<stdout>", e))
}

fn thread_count(args: &Args) -> Result<Option<usize>> {
    let (key, raw) = match args.raw("threads") {
        Some(v) => ("threads", v.to_string()),
        None => match std::env::var("PPCLAB_THREADS") {
            Ok(v) if !v.trim().is_empty() => ("PPCLAB_THREADS", v),
            _ => return Ok(None),
        },
    };
    match raw.trim().parse::<usize>() {
        Ok(t) if t >= 1 => Ok(Some(t)),
        _ => Err(Error::usage(key, format!("expected a positive integer, got {raw:?}"))),
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ldpc-edge --test acceptance`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use ldpc_edge::bench::{run_bench, BenchConfig};
use ldpc_edge::channel::{box_muller, frame_rng, modulate, transmit_all_zero, write_csv, BerConfig};
use ldpc_edge::code::{build_check_tables, build_variable_tables, generate_gallager_code, ParityCheckMatrix};
use ldpc_edge::parallel::{parallel_syndrome, PagePlan, SharedDecodeState, WorkerPool};
use ldpc_edge::reference::{decode_awgn, initialize};
use ldpc_edge::{ber_sweep, ParallelDecoder, TannerTables, Xorshift128Plus};

const GROUP_SIZES: [usize; 4] = [1, 7, 31, 512];

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn regular_96_48() -> ParityCheckMatrix {
    generate_gallager_code(96, 3, 6, 1).unwrap()
}

fn c1_golden_tables() -> Result<String, String> {
    let start = Instant::now();
    let h = code_14_7();
    let vt = build_variable_tables(&h);
    let ct = build_check_tables(&vt);
    let pairs: [(&str, &[usize], &[usize]); 12] = [
        ("e", &vt.e, &E),
        ("v", &vt.v, &V),
        ("c", &vt.c, &C),
        ("t", &vt.t, &T),
        ("s", &vt.s, &S),
        ("u", &vt.u, &U),
        ("e_bar", &ct.e, &E_BAR),
        ("v_bar", &ct.v, &V_BAR),
        ("c_bar", &ct.c, &C_BAR),
        ("t_bar", &ct.t, &T_BAR),
        ("s_bar", &ct.s, &S_BAR),
        ("u_bar", &ct.u, &U_BAR),
    ];
    for (name, got, want) in pairs {
        ensure(got == want, || format!("array {name}: got {got:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("12 arrays x 31 entries exact".into())
}

fn c2_serial_parallel_oracle() -> Result<String, String> {
    let start = Instant::now();
    let frames = 1000;
    let sigma2 = 0.63;
    let pools = [WorkerPool::new(Some(1)).unwrap(), WorkerPool::new(Some(4)).unwrap()];
    let mut compared = 0;
    for (label, h) in [("(14,7)", code_14_7()), ("(96,48)", regular_96_48())] {
        let t = TannerTables::new(&h);
        let decoders: Vec<_> = GROUP_SIZES.iter().map(|&gs| ParallelDecoder::new(&t, gs).unwrap()).collect();
        let inputs: Vec<Vec<f64>> = (0..frames)
            .map(|f| transmit_all_zero(h.n(), sigma2, &mut frame_rng(2, 0, f)).unwrap())
            .collect();
        let serial: Vec<_> = inputs.iter().map(|y| decode_awgn(y, sigma2, 50, &t, &h).unwrap()).collect();
        for pool in &pools {
            for dec in &decoders {
                let par: Vec<_> = pool.install(|| inputs.iter().map(|y| dec.decode(y, sigma2, 50).unwrap()).collect());
                if let Some(f) = (0..frames as usize).find(|&f| par[f] != serial[f]) {
                    return Err(format!(
                        "{label} frame {f} differs at group_size {} threads {}",
                        dec.plan().group_size(),
                        pool.threads()
                    ));
                }
                compared += frames as usize;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{compared} parallel decodes bit-identical"))
}

fn c3_syndrome() -> Result<String, String> {
    let mut rng = Xorshift128Plus::from_seed(3);
    for trial in 0..200 {
        let m = 1 + rng.below(64);
        let n = 1 + rng.below(128);
        let density = 0.02 + 0.2 * rng.uniform01();
        let h = random_matrix(&mut rng, m, n, density);
        let t = TannerTables::new(&h);
        let c_hat = random_bits(&mut rng, n);
        let want = dense_syndrome(&h, &c_hat);
        let plan = PagePlan::new(t.total_edges(), GROUP_SIZES[trial % 4]).unwrap();
        let st = SharedDecodeState::from_messages(&initialize(&vec![0.0; n], 1.0, &t).unwrap(), &t);
        st.set_estimate(&c_hat);
        parallel_syndrome(&st, &t, &plan);
        ensure(st.syndrome_vec() == want, || format!("trial {trial}: table syndrome differs"))?;
        ensure(h.syndrome(&c_hat).unwrap() == want, || format!("trial {trial}: serial syndrome differs"))?;
    }
    Ok("200 random matrices exact".into())
}

fn c4_clean_codewords() -> Result<String, String> {
    let mut rng = Xorshift128Plus::from_seed(4);
    let mut word = vec![0u8; 14];
    for j in [1, 4, 5, 11] {
        word[j] = 1;
    }
    let cases: Vec<(ParityCheckMatrix, Vec<u8>)> = vec![
        (code_14_7(), vec![0; 14]),
        (code_14_7(), word),
        (regular_96_48(), vec![0; 96]),
        (generate_gallager_code(1536, 3, 6, 7).unwrap(), vec![0; 1536]),
        (random_matrix(&mut rng, 40, 100, 0.05), vec![0; 100]),
    ];
    let mut runs = 0;
    for (h, cw) in &cases {
        ensure(h.syndrome(cw).unwrap().iter().all(|&z| z == 0), || "test word is not a codeword".into())?;
        let t = TannerTables::new(h);
        let y = modulate(cw);
        let check = |res: ldpc_edge::DecodeResult, who: &str| {
            ensure(res.success && res.iterations_used == 0 && &res.estimate == cw, || {
                format!("{who} on n = {}: {res:?}", h.n())
            })
        };
        check(decode_awgn(&y, 0.5, 50, &t, h).unwrap(), "reference")?;
        for gs in GROUP_SIZES {
            check(ParallelDecoder::new(&t, gs).unwrap().decode(&y, 0.5, 50).unwrap(), "parallel")?;
            runs += 1;
        }
    }
    Ok(format!("{} codes/words x {} group sizes, all 0 iterations", cases.len(), runs / cases.len()))
}

fn c5_single_errors() -> Result<String, String> {
    let h = code_14_7();
    let t = TannerTables::new(&h);
    let mut worst = 0;
    for pos in 0..14 {
        let mut y = vec![-1.0; 14];
        y[pos] = 1.0;
        let res = decode_awgn(&y, 0.5, 10, &t, &h).unwrap();
        ensure(res.success && res.estimate == vec![0; 14], || format!("flip at {pos} not corrected"))?;
        for gs in GROUP_SIZES {
            let par = ParallelDecoder::new(&t, gs).unwrap().decode(&y, 0.5, 10).unwrap();
            ensure(par == res, || format!("flip at {pos}: parallel differs at group_size {gs}"))?;
        }
        worst = worst.max(res.iterations_used);
    }
    Ok(format!("14/14 flips corrected, max {worst} iterations"))
}

fn c6_ber_sanity() -> Result<String, String> {
    let start = Instant::now();
    let h = regular_96_48();
    let csv_for = |decoders| {
        let cfg = BerConfig {
            ebno_db: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            frames: 10_000,
            seed: 1,
            decoders_in_flight: decoders,
            ..BerConfig::default()
        };
        let points = ber_sweep(&h, &cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &points).unwrap();
        (points, buf)
    };
    let (points, first) = csv_for(1);
    let (_, eight) = csv_for(8);
    let (_, rerun) = csv_for(8);
    ensure(first == eight, || "CSV differs between 1 and 8 decoders in flight".into())?;
    ensure(eight == rerun, || "CSV differs between reruns".into())?;
    let bers: Vec<f64> = points.iter().map(|p| p.ber).collect();
    ensure(bers.windows(2).all(|w| w[1] < w[0]), || format!("BER not strictly decreasing: {bers:?}"))?;
    within(start.elapsed(), Duration::from_secs(300))?;
    let shown: Vec<String> = bers.iter().map(|b| format!("{b:.3e}")).collect();
    Ok(format!("BER [{}], CSV byte-identical x3", shown.join(", ")))
}

fn c7_rng() -> Result<String, String> {
    for (a, b) in [(1u64, 2u64), (42, 1337)] {
        let mut ours = Xorshift128Plus::new(a, b).unwrap();
        let mut s = [a, b];
        for step in 0..1000 {
            // published xorshift128+ routine
            let mut s1 = s[0];
            let s0 = s[1];
            s[0] = s0;
            s1 ^= s1 << 23;
            s[1] = s1 ^ s0 ^ (s1 >> 18) ^ (s0 >> 5);
            let want = s[1].wrapping_add(s0);
            let got = ours.next_u64();
            ensure(got == want, || format!("seed ({a}, {b}) step {step}: {got:#x} != {want:#x}"))?;
        }
    }
    let mut rng = Xorshift128Plus::from_seed(7);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let (u1, u2) = (rng.uniform01(), rng.uniform01());
        let (z0, z1) = box_muller(u1, u2);
        let want = -2.0 * u1.ln();
        if want > 0.0 {
            worst = worst.max(((z0 * z0 + z1 * z1) - want).abs() / want);
        }
    }
    ensure(worst <= 1e-12, || format!("Box-Muller relative error {worst:e}"))?;
    Ok(format!("2x1000 steps exact, Box-Muller max rel err {worst:.1e}"))
}

fn c8_throughput() -> Result<String, String> {
    let h = generate_gallager_code(1536, 3, 6, 8).unwrap();
    let cores = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cfg = BenchConfig {
        frames: 400,
        seed: 8,
        ..BenchConfig::default()
    };
    let r = run_bench(&h, &cfg).map_err(|e| e.to_string())?;
    ensure(r.identical, || "parallel output differs from serial during benchmark".into())?;
    let summary = format!(
        "{} edges, {} threads: serial {:.1} fps, parallel {:.1} fps, speedup {:.2}",
        r.edges,
        r.threads,
        r.serial_fps(),
        r.parallel_fps(),
        r.speedup()
    );
    if cores < 4 {
        return Ok(format!("{summary} (informational: only {cores} core(s), throughput not judged)"));
    }
    if r.parallel_fps() < r.serial_fps() {
        return Ok(format!("{summary} WARNING: parallel slower than serial on this machine"));
    }
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("1 golden tables", c1_golden_tables),
        ("2 serial == parallel", c2_serial_parallel_oracle),
        ("3 syndrome correctness", c3_syndrome),
        ("4 clean-codeword fixed point", c4_clean_codewords),
        ("5 single-error correction", c5_single_errors),
        ("6 BER sanity", c6_ber_sanity),
        ("7 RNG conformance", c7_rng),
        ("8 throughput (informational)", c8_throughput),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name:<32} {secs:>7.2}s  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name:<32} {secs:>7.2}s  {detail}");
            }
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

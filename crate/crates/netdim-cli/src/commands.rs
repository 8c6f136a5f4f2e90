//! The seven subcommands, each rendering a complete output document.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::json;

use netdim::centrality::{
    betweenness_centrality, closeness_from_shells, compute_measure, degree_centrality,
    eigenvector_centrality, local_dimension_from_shells, local_information_dimension_from_shells,
    rank, Measure, EC_MAX_ITER, EC_TOL,
};
use netdim::epidemic::{si_ensemble, spreading_ability, SIConfig};
use netdim::error::Error;
use netdim::evaluation::{scatter_table, tau_sweep};
use netdim::graph::{all_shells, build_graph, graph_stats, largest_component, Graph};
use netdim::parse::parse;
use netdim::Result;

use crate::config::Settings;
use crate::output::{csv_field, json_score, render_json, OutFormat};

fn load_graph(s: &Settings) -> Result<Graph> {
    let text = std::fs::read_to_string(&s.input).map_err(|e| {
        std::io::Error::new(e.kind(), format!("{}: {e}", s.input.display()))
    })?;
    let mut g = build_graph(&parse(&text, s.format)?);
    if s.largest_component {
        g = largest_component(&g);
    }
    Ok(g)
}

fn measures_or_all(s: &Settings) -> Vec<Measure> {
    s.measures.clone().unwrap_or_else(|| Measure::ALL.to_vec())
}

pub fn stats(s: &Settings) -> Result<String> {
    let st = graph_stats(&load_graph(s)?)?;
    Ok(match s.out_format {
        OutFormat::Csv => format!(
            "n,m,avg_degree,max_degree,avg_shortest_distance,diameter\n\
             {},{},{:.4},{},{:.4},{}\n",
            st.n, st.m, st.avg_degree, st.max_degree, st.avg_shortest_distance, st.diameter
        ),
        OutFormat::Json => render_json(&serde_json::to_value(&st).expect("stats serialize")),
    })
}

pub fn rank_cmd(s: &Settings) -> Result<String> {
    let g = load_graph(s)?;
    let mut lists = Vec::new();
    for m in measures_or_all(s) {
        let sv = compute_measure(&g, m)?;
        let rl = rank(&g, &sv, s.k)?;
        // note on stderr so the emitted table stays machine-readable
        if s.k.is_some_and(|k| k > rl.len()) {
            eprintln!("note: {m}: only {} nodes, k truncated", rl.len());
        }
        lists.push(rl);
    }
    Ok(match s.out_format {
        OutFormat::Csv => {
            let mut out = String::from("measure,rank,label,score\n");
            for rl in &lists {
                for (i, (label, score)) in rl.labels.iter().zip(&rl.scores).enumerate() {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        rl.measure,
                        i + 1,
                        csv_field(label),
                        score
                    );
                }
            }
            out
        }
        OutFormat::Json => {
            let rows: Vec<_> = lists
                .iter()
                .flat_map(|rl| {
                    rl.labels.iter().zip(&rl.scores).enumerate().map(|(i, (label, &score))| {
                        json!({
                            "measure": rl.measure.as_str(),
                            "rank": i + 1,
                            "label": label,
                            "score": json_score(score),
                        })
                    })
                })
                .collect();
            render_json(&json!(rows))
        }
    })
}

/// Time each measure's own work. Distance infrastructure (per-node BFS
/// shells) is computed once, untimed, so measures that consume precomputed
/// distances are metered on their actual processing alone. Always runs on a
/// single worker so the numbers are comparable.
pub fn bench(s: &Settings) -> Result<String> {
    let g = load_graph(s)?;
    let measures = measures_or_all(s);
    let needs_connected = [Measure::Cc, Measure::Ec, Measure::Ld, Measure::Lid];
    if measures.iter().any(|m| needs_connected.contains(m)) && !g.is_connected() {
        return Err(Error::Disconnected { op: "bench" });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let timed: Result<Vec<(Measure, f64)>> = pool.install(|| {
        let shells = all_shells(&g);
        let n = g.node_count();
        measures
            .iter()
            .map(|&m| {
                let t = Instant::now();
                match m {
                    Measure::Dc => {
                        std::hint::black_box(degree_centrality(&g));
                    }
                    Measure::Bc => {
                        std::hint::black_box(betweenness_centrality(&g));
                    }
                    Measure::Cc => {
                        std::hint::black_box(closeness_from_shells(&shells));
                    }
                    Measure::Ec => {
                        std::hint::black_box(eigenvector_centrality(&g, EC_TOL, EC_MAX_ITER)?);
                    }
                    Measure::Ld => {
                        std::hint::black_box(local_dimension_from_shells(&shells));
                    }
                    Measure::Lid => {
                        std::hint::black_box(local_information_dimension_from_shells(&shells, n));
                    }
                }
                Ok((m, t.elapsed().as_secs_f64()))
            })
            .collect()
    });
    let timed = timed?;
    Ok(match s.out_format {
        OutFormat::Csv => {
            let mut out = String::from("measure,seconds\n");
            for (m, secs) in &timed {
                let _ = writeln!(out, "{m},{secs:.6}");
            }
            out
        }
        OutFormat::Json => {
            let rows: Vec<_> = timed
                .iter()
                .map(|(m, secs)| json!({"measure": m.as_str(), "seconds": secs}))
                .collect();
            render_json(&json!(rows))
        }
    })
}

/// Resolve the initially infected set: explicit labels, or the top k of a
/// single requested measure.
fn initial_infected(g: &Graph, s: &Settings) -> Result<Vec<u32>> {
    if let Some(labels) = &s.seeds {
        return labels
            .iter()
            .map(|l| {
                g.index_of(l)
                    .ok_or_else(|| Error::UnknownLabel(l.clone()))
            })
            .collect();
    }
    let Some(measures) = &s.measures else {
        return Err(Error::InvalidParameter(
            "si needs --seeds, or one --measures entry with --k for top-k seeding".into(),
        ));
    };
    if measures.len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "top-k seeding takes exactly one measure, got {}",
            measures.len()
        )));
    }
    let Some(k) = s.k else {
        return Err(Error::InvalidParameter(
            "top-k seeding needs --k".into(),
        ));
    };
    let sv = compute_measure(g, measures[0])?;
    let rl = rank(g, &sv, Some(k))?;
    Ok(rl
        .labels
        .iter()
        .map(|l| g.index_of(l).expect("ranked label exists"))
        .collect())
}

pub fn si(s: &Settings) -> Result<String> {
    let g = load_graph(s)?;
    let seeds = initial_infected(&g, s)?;
    let cfg = SIConfig {
        lambda: s.single_lambda()?,
        steps: s.steps,
        runs: s.runs,
        seeds,
        master_seed: s.seed,
    };
    let trace = si_ensemble(&g, &cfg)?;
    Ok(match s.out_format {
        OutFormat::Csv => {
            let mut out = String::from("t,mean_F\n");
            for (t, f) in trace.mean_f.iter().enumerate() {
                let _ = writeln!(out, "{t},{f}");
            }
            out
        }
        OutFormat::Json => render_json(&json!({
            "lambda": cfg.lambda,
            "steps": cfg.steps,
            "runs": cfg.runs,
            "seeds": cfg.seeds.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
            "master_seed": cfg.master_seed,
            "mean_f": trace.mean_f,
        })),
    })
}

pub fn ability(s: &Settings) -> Result<String> {
    let g = load_graph(s)?;
    let scores = spreading_ability(&g, s.single_lambda()?, s.t_obs, s.runs, s.seed)?;
    Ok(match s.out_format {
        OutFormat::Csv => {
            let mut out = String::from("node,ability\n");
            for (i, a) in scores.iter().enumerate() {
                let _ = writeln!(out, "{},{a}", csv_field(g.label(i as u32)));
            }
            out
        }
        OutFormat::Json => {
            let rows: Vec<_> = scores
                .iter()
                .enumerate()
                .map(|(i, a)| json!({"node": g.label(i as u32), "ability": a}))
                .collect();
            render_json(&json!(rows))
        }
    })
}

pub fn kendall(s: &Settings) -> Result<String> {
    let g = load_graph(s)?;
    let measures = s
        .measures
        .clone()
        .unwrap_or_else(|| vec![Measure::Lid, Measure::Ld]);
    let lambdas = match &s.lambdas {
        Some(ls) => ls.clone(),
        // the standard sweep: 0.01 through 0.10
        None => (1..=10).map(|i| i as f64 / 100.0).collect(),
    };
    let rows = tau_sweep(&g, &measures, &lambdas, s.t_obs, s.runs, s.seed)?;
    Ok(match s.out_format {
        OutFormat::Csv => {
            let mut out = String::from("measure,lambda,tau\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", r.measure, r.lambda, r.tau);
            }
            out
        }
        OutFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| json!({"measure": r.measure.as_str(), "lambda": r.lambda, "tau": r.tau}))
                .collect();
            render_json(&json!(rows))
        }
    })
}

pub fn scatter(s: &Settings) -> Result<String> {
    let g = load_graph(s)?;
    let comparison = s.comparison.ok_or_else(|| {
        Error::InvalidParameter("scatter needs --comparison DC or LD".into())
    })?;
    let rows = scatter_table(&g, comparison, s.single_lambda()?, s.t_obs, s.runs, s.seed)?;
    Ok(match s.out_format {
        OutFormat::Csv => {
            let mut out = String::from("node,x,y,f\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{}", csv_field(&r.label), r.x, r.y, r.f);
            }
            out
        }
        OutFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "node": r.label,
                        "x": json_score(r.x),
                        "y": json_score(r.y),
                        "f": r.f,
                    })
                })
                .collect();
            render_json(&json!(rows))
        }
    })
}

//! The five subcommands. Each one computes everything in memory first and
//! only then writes its files, each through a temp file and a rename.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::config::{EdgesFormat, PipelineConfig};
use crate::apu::{ApuOutcome, Label};
use crate::classify::{predict, stratified_split, train, Normalization};
use crate::error::{Error, Result};
use crate::eval::{classification_metrics, discovery_f1, masked_recovery, rank_candidates};
use crate::graph::Graph;
use crate::ingest::{load_seeds, parse_seeds, MaskReport, SeedReport, SeedSet};
use crate::nedbit::{NedbitFeatures, FEATURE_NAMES};
use crate::pipeline::run_labeling;

/// Loaded and hashed inputs.
pub struct Inputs {
    pub graph: Graph,
    pub seeds: SeedSet,
    pub seed_report: SeedReport,
    pub graph_stats: Value,
    /// sha256 of each input file's bytes, keyed by config field name.
    pub hashes: BTreeMap<String, String>,
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

pub fn load_inputs(cfg: &PipelineConfig) -> Result<Inputs> {
    let edges = required(&cfg.edges, "edges")?;
    let seeds_path = required(&cfg.seeds, "seeds")?;
    let full = match cfg.edges_format {
        EdgesFormat::Tsv => Graph::read_edge_tsv(edges)?,
        EdgesFormat::Biogrid => Graph::read_biogrid_tab3(edges, &cfg.organism)?,
    };
    let graph = full.largest_connected_component();
    log::info!(
        "network: {} nodes / {} edges, largest component {} nodes / {} edges",
        full.node_count(),
        full.edge_count(),
        graph.node_count(),
        graph.edge_count()
    );
    let (seeds, seed_report) = load_seeds(seeds_path, &graph)?;
    log::info!(
        "seeds: {} mapped, {} dropped, {} duplicate rows",
        seed_report.mapped,
        seed_report.dropped.len(),
        seed_report.duplicates
    );
    let mut hashes = BTreeMap::new();
    hashes.insert("edges".to_string(), sha256_file(edges)?);
    hashes.insert("seeds".to_string(), sha256_file(seeds_path)?);
    if let Some(ext) = &cfg.extended_seeds {
        hashes.insert("extended_seeds".to_string(), sha256_file(ext)?);
    }
    let graph_stats = json!({
        "input_nodes": full.node_count(),
        "input_edges": full.edge_count(),
        "nodes": graph.node_count(),
        "edges": graph.edge_count(),
    });
    Ok(Inputs {
        graph,
        seeds,
        seed_report,
        graph_stats,
        hashes,
    })
}

/// Files produced by a command, written together at the end.
struct Outputs<'a> {
    cfg: &'a PipelineConfig,
    inputs: &'a Inputs,
    command: &'static str,
    files: Vec<(String, Vec<u8>)>,
}

impl<'a> Outputs<'a> {
    fn new(cfg: &'a PipelineConfig, inputs: &'a Inputs, command: &'static str) -> Self {
        Outputs {
            cfg,
            inputs,
            command,
            files: Vec::new(),
        }
    }

    /// `#` header lines carrying the command, config and input hashes.
    fn header(&self) -> String {
        format!(
            "# genepu {}\n# config: {}\n# inputs: {}\n",
            self.command,
            self.cfg.to_json(),
            serde_json::to_string(&self.inputs.hashes).unwrap()
        )
    }

    fn table(&mut self, name: &str, body: String) {
        let text = self.header() + &body;
        self.files.push((name.to_string(), text.into_bytes()));
    }

    fn json(&mut self, name: &str, payload: Value) {
        let mut doc = json!({
            "command": self.command,
            "config": self.cfg,
            "inputs": self.inputs.hashes,
        });
        if let (Value::Object(d), Value::Object(p)) = (&mut doc, payload) {
            d.extend(p);
        }
        let mut text = serde_json::to_string_pretty(&doc).unwrap();
        text.push('\n');
        self.files.push((name.to_string(), text.into_bytes()));
    }

    fn commit(self) -> Result<Vec<PathBuf>> {
        let dir = &self.cfg.out_dir;
        fs::create_dir_all(dir).map_err(|e| Error::io(format!("creating {}", dir.display()), e))?;
        let mut written = Vec::new();
        for (name, bytes) in self.files {
            let target = dir.join(&name);
            write_atomic(&target, &bytes)?;
            log::info!("wrote {}", target.display());
            written.push(target);
        }
        Ok(written)
    }
}

fn write_atomic(target: &Path, bytes: &[u8]) -> Result<()> {
    let dir = target.parent().unwrap_or(Path::new("."));
    let ctx = || format!("writing {}", target.display());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(ctx(), e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(ctx(), e))?;
    tmp.persist(target).map_err(|e| Error::io(ctx(), e.error))?;
    Ok(())
}

fn feature_table(g: &Graph, seeds: &SeedSet, f: &NedbitFeatures, normalized: bool, labels: Option<&[Label]>) -> String {
    let m = if normalized { &f.normalized } else { &f.raw };
    let mut out = format!("gene_name\t{}\tlabel\n", FEATURE_NAMES.join("\t"));
    for i in 0..g.node_count() {
        out += g.name(i);
        for v in m.row(i) {
            let _ = write!(out, "\t{v}");
        }
        let label = match labels {
            Some(l) => l[i].as_str(),
            None if seeds.contains(i) => "P",
            None => "U",
        };
        let _ = writeln!(out, "\t{label}");
    }
    out
}

fn features_sidecar(f: &NedbitFeatures, inputs: &Inputs) -> Value {
    json!({
        "graph": inputs.graph_stats,
        "seed_report": inputs.seed_report,
        "features": {
            "columns": FEATURE_NAMES,
            "config": f.config,
            "bounds": f.bounds,
        },
    })
}

fn apu_summary(apu: &ApuOutcome) -> Value {
    let counts: BTreeMap<String, usize> = Label::ALL
        .iter()
        .map(|&l| (l.to_string(), apu.labels.count(l)))
        .collect();
    json!({
        "cutoff": apu.cutoff,
        "similarity_entries": apu.similarity_nnz,
        "self_only_rows": apu.self_only_rows,
        "unreached": apu.unreached,
        "rn_count": apu.rn.len(),
        "iterations": apu.state.iterations,
        "step_norm": apu.state.step_norm,
        "residual": apu.state.residual,
        "norm": "l2",
        "class_counts": counts,
    })
}

pub fn cmd_features(cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    let inputs = load_inputs(cfg)?;
    let f = crate::nedbit::assemble_features(&inputs.graph, &inputs.seeds, &cfg.labeling().features)?;
    let mut out = Outputs::new(cfg, &inputs, "features");
    out.table("features_raw.tsv", feature_table(&inputs.graph, &inputs.seeds, &f, false, None));
    out.table("features.tsv", feature_table(&inputs.graph, &inputs.seeds, &f, true, None));
    out.json("features.json", features_sidecar(&f, &inputs));
    out.commit()
}

fn label_table(g: &Graph, apu: &ApuOutcome) -> String {
    let ranks = apu.labels.ranks();
    let mut out = String::from("gene_name\tlabel\tg_inf\trank\n");
    for i in 0..g.node_count() {
        let rank = ranks[i].map_or_else(|| "-".to_string(), |r| r.to_string());
        let _ = writeln!(out, "{}\t{}\t{}\t{}", g.name(i), apu.labels.labels[i], apu.state.g_inf[i], rank);
    }
    out
}

pub fn cmd_label(cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    let inputs = load_inputs(cfg)?;
    let (f, apu) = run_labeling(&inputs.graph, &inputs.seeds, &cfg.labeling())?;
    let labels = Some(apu.labels.labels.as_slice());
    let mut out = Outputs::new(cfg, &inputs, "label");
    out.table("features_raw.tsv", feature_table(&inputs.graph, &inputs.seeds, &f, false, labels));
    out.table("features.tsv", feature_table(&inputs.graph, &inputs.seeds, &f, true, labels));
    out.json("features.json", features_sidecar(&f, &inputs));
    out.table("labels.tsv", label_table(&inputs.graph, &apu));
    out.json("labels.json", json!({ "graph": inputs.graph_stats, "labeling": apu_summary(&apu) }));
    out.commit()
}

pub fn cmd_validate(cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    let inputs = load_inputs(cfg)?;
    let g = &inputs.graph;
    let report = masked_recovery(g, &inputs.seeds, cfg.folds, &cfg.labeling(), cfg.rng_seed)?;
    let masks: Vec<MaskReport> = report
        .outcomes
        .iter()
        .map(|o| MaskReport {
            fold: o.fold,
            held_out: o.held_out.iter().map(|&i| g.name(i).to_string()).collect(),
            retained_count: o.retained,
        })
        .collect();
    let mut folds_tsv = String::from("fold\tstatus\tLP\tWN\tLN\tRN\n");
    for o in &report.outcomes {
        let _ = write!(folds_tsv, "{}\t{}", o.fold, o.error.as_deref().map_or("ok", |_| "failed"));
        for c in &o.classes {
            let _ = write!(folds_tsv, "\t{}", c.count);
        }
        if o.classes.is_empty() {
            folds_tsv += "\tNA\tNA\tNA\tNA";
        }
        folds_tsv.push('\n');
    }
    let mut out = Outputs::new(cfg, &inputs, "validate");
    out.table("validation.tsv", report.to_tsv());
    out.table("validation_folds.tsv", folds_tsv);
    out.json(
        "validation.json",
        json!({ "graph": inputs.graph_stats, "masks": masks, "report": report }),
    );
    out.commit()
}

pub fn cmd_discover(cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    let inputs = load_inputs(cfg)?;
    let g = &inputs.graph;
    let ext_path = required(&cfg.extended_seeds, "extended-seeds")?;
    let extended_rows = parse_seeds(ext_path)?;
    let extended: Vec<usize> = extended_rows.iter().filter_map(|(name, _)| g.id_of(name)).collect();
    let unmapped = extended_rows.len() - extended.len();
    let (_, apu) = run_labeling(g, &inputs.seeds, &cfg.labeling())?;
    let ranking = rank_candidates(&apu.state.g_inf, inputs.seeds.members());
    let curve = discovery_f1(&ranking, inputs.seeds.members(), &extended, &cfg.percentages)?;
    let mut csv = String::from("pct,k,precision,recall,f1\n");
    for p in &curve {
        let _ = writeln!(csv, "{},{},{},{},{}", p.pct, p.k, p.precision, p.recall, p.f1);
    }
    let targets: std::collections::HashSet<usize> = extended
        .iter()
        .copied()
        .filter(|&i| !inputs.seeds.contains(i))
        .collect();
    let mut cands = String::from("rank\tgene_name\tg_inf\tlabel\textended_only\n");
    for (pos, &i) in ranking.iter().enumerate() {
        let _ = writeln!(
            cands,
            "{}\t{}\t{}\t{}\t{}",
            pos + 1,
            g.name(i),
            apu.state.g_inf[i],
            apu.labels.labels[i],
            u8::from(targets.contains(&i))
        );
    }
    let mut out = Outputs::new(cfg, &inputs, "discover");
    out.table("discovery.csv", csv);
    out.table("candidates.tsv", cands);
    out.json(
        "discovery.json",
        json!({
            "graph": inputs.graph_stats,
            "labeling": apu_summary(&apu),
            "extended_only": targets.len(),
            "extended_unmapped": unmapped,
            "curve": curve,
        }),
    );
    out.commit()
}

pub fn cmd_classify(cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    let inputs = load_inputs(cfg)?;
    let g = &inputs.graph;
    let (f, apu) = run_labeling(g, &inputs.seeds, &cfg.labeling())?;
    let labels = &apu.labels.labels;
    let (train_ids, test_ids) = stratified_split(labels, cfg.train_fraction, cfg.rng_seed)?;
    let x_train = f.normalized.select_rows(&train_ids);
    let y_train: Vec<Label> = train_ids.iter().map(|&i| labels[i]).collect();
    let mut model = train(&x_train, &y_train, &cfg.training())?;
    model.normalization = Some(Normalization {
        bounds: f.bounds.clone(),
        log_transform: f.config.log_transform.to_vec(),
        log_scale: f.config.log_scale,
    });
    log::info!("training loss {:.6}", model.final_loss);
    let x_test = f.normalized.select_rows(&test_ids);
    let predictions = predict(&model, &x_test)?;
    let truth: Vec<Label> = test_ids.iter().map(|&i| labels[i]).collect();
    let predicted: Vec<Label> = predictions.iter().map(|p| p.label).collect();
    let metrics = classification_metrics(&truth, &predicted)?;
    let train_pred: Vec<Label> = predict(&model, &x_train)?.iter().map(|p| p.label).collect();
    let train_metrics = classification_metrics(&y_train, &train_pred)?;

    let mut preds = format!(
        "gene_name\ttrue\tpredicted\t{}\n",
        Label::ALL.map(|l| format!("p_{l}")).join("\t")
    );
    for (k, &i) in test_ids.iter().enumerate() {
        let _ = write!(preds, "{}\t{}\t{}", g.name(i), truth[k], predicted[k]);
        for p in predictions[k].probabilities {
            let _ = write!(preds, "\t{p}");
        }
        preds.push('\n');
    }
    let mut confusion = String::from("true\\predicted");
    for l in Label::ALL {
        let _ = write!(confusion, "\t{l}");
    }
    confusion.push('\n');
    for (r, row) in metrics.confusion.iter().enumerate() {
        let _ = write!(confusion, "{}", Label::ALL[r]);
        for c in row {
            let _ = write!(confusion, "\t{c}");
        }
        confusion.push('\n');
    }
    let mut out = Outputs::new(cfg, &inputs, "classify");
    out.json("model.json", json!({ "model": model, "feature_columns": FEATURE_NAMES }));
    out.json(
        "metrics.json",
        json!({
            "train_size": train_ids.len(),
            "test_size": test_ids.len(),
            "test": metrics,
            "train": train_metrics,
        }),
    );
    out.table("metrics.tsv", metrics.to_tsv());
    out.table("confusion.tsv", confusion);
    out.table("predictions.tsv", preds);
    out.commit()
}

use crate::record::RunRecord;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

/// CSV has no nested values, so list columns are joined with `;`.
#[derive(Serialize)]
struct CsvRow<'a> {
    genus: u32,
    boundary: u32,
    punctures: u32,
    k: u32,
    flavor: &'a str,
    torsion: String,
    free_rank: usize,
    generators: String,
    lower_bound: usize,
    oracle: u32,
    #[serde(rename = "match")]
    matches: bool,
    samples: usize,
    seed: u64,
    ms: u64,
}

impl<'a> From<&'a RunRecord> for CsvRow<'a> {
    fn from(r: &'a RunRecord) -> Self {
        CsvRow {
            genus: r.genus,
            boundary: r.boundary,
            punctures: r.punctures,
            k: r.k,
            flavor: &r.flavor,
            torsion: r.torsion.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
            free_rank: r.free_rank,
            generators: r.generators.join(";"),
            lower_bound: r.lower_bound,
            oracle: r.oracle,
            matches: r.matches,
            samples: r.samples,
            seed: r.seed,
            ms: r.ms,
        }
    }
}

const COLUMNS: [&str; 14] = [
    "genus",
    "boundary",
    "punctures",
    "k",
    "flavor",
    "torsion",
    "free_rank",
    "generators",
    "lower_bound",
    "oracle",
    "match",
    "samples",
    "seed",
    "ms",
];

pub fn render_table(records: &[RunRecord], format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("records serialize");
            s.push('\n');
            s
        }
        TableFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(COLUMNS).expect("in-memory write");
            for r in records {
                w.serialize(CsvRow::from(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        TableFormat::Markdown => markdown(records),
    }
}

fn markdown(records: &[RunRecord]) -> String {
    let header = ["g", "s", "n", "k", "flavor", "H1", "oracle", "lower bound", "match", "generators", "ms"];
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in records {
        let row = [
            r.genus.to_string(),
            r.boundary.to_string(),
            r.punctures.to_string(),
            r.k.to_string(),
            r.flavor.clone(),
            r.group(),
            format!("(Z/2)^{}", r.oracle),
            r.lower_bound.to_string(),
            if r.matches { "yes".into() } else { "NO".into() },
            r.generators.join(", "),
            r.ms.to_string(),
        ];
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

/// Plain report for a single record.
pub fn render_text(r: &RunRecord) -> String {
    let mut out = format!("surface  g={} s={} n={} k={} flavor={}\n", r.genus, r.boundary, r.punctures, r.k, r.flavor);
    out.push_str(&format!("H1       {}\n", r.group()));
    out.push_str(&format!("oracle   (Z/2)^{} ({})\n", r.oracle, if r.matches { "match" } else { "MISMATCH" }));
    out.push_str(&format!("bound    {} certified Z/2 summands\n", r.lower_bound));
    out.push_str(&format!("basis    {}\n", r.generators.join(", ")));
    out.push_str(&format!("samples  {} (seed {})\n", r.samples, r.seed));
    if r.ms > 0 {
        out.push_str(&format!("time     {} ms\n", r.ms));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> RunRecord {
        RunRecord {
            genus: 3,
            boundary: 1,
            punctures: 0,
            k: 0,
            flavor: "pm+".into(),
            torsion: vec![2, 2, 2],
            free_rank: 0,
            generators: vec!["a_{1,1}+a_{1,2}".into(), "a_{1,3}".into(), "u_{1,3}".into()],
            lower_bound: 0,
            oracle: 3,
            matches: true,
            samples: 17,
            seed: 0,
            ms: 0,
        }
    }

    #[test]
    fn csv_columns() {
        let s = render_table(&[record()], TableFormat::Csv);
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        assert_eq!(lines.next().unwrap(), "3,1,0,0,pm+,2;2;2,0,\"a_{1,1}+a_{1,2};a_{1,3};u_{1,3}\",0,3,true,17,0,0");
    }

    #[test]
    fn group_names() {
        assert_eq!(record().group(), "(Z/2)^3");
        let mut r = record();
        r.torsion = vec![2, 4];
        r.free_rank = 1;
        assert_eq!(r.group(), "Z + Z/2 + Z/4");
    }

    #[test]
    fn empty_tables() {
        assert_eq!(render_table(&[], TableFormat::Json), "[]\n");
        assert_eq!(render_table(&[], TableFormat::Csv).lines().count(), 1);
    }
}

//! Plain-text file formats.
//!
//! * degree distribution: `d<TAB>n_d`, ascending `d`, omitted degrees have count 0
//! * clustering profile: `d<TAB>c_d`, same conventions
//! * edge list: `u<TAB>v`; written canonical and sorted, read in any order
//! * CCD report: `d<TAB>c_d<TAB>wedges<TAB>halfwidth`
//! * setup dump: one `[name]` section per table array, `index<TAB>value` rows
//!
//! Readers skip blank lines and lines starting with `#`, and accept any
//! whitespace as the column separator.

use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::assembly::Graph;
use crate::error::{BterError, Result};
use crate::metrics::CcdReport;
use crate::model::{ClusteringProfile, DegreeDistribution, Edge, NodeId};
use crate::setup::SetupTables;

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| BterError::io(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| BterError::io(path, e))
}

/// Writes through `f` into a new file at `path`.
pub fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let mut w = create(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| BterError::io(path, e))
}

struct Lines<R> {
    reader: R,
    path: PathBuf,
    line: usize,
    buf: String,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R, path: &Path) -> Self {
        Lines {
            reader,
            path: path.to_path_buf(),
            line: 0,
            buf: String::new(),
        }
    }

    /// Next data line split into fields.
    fn next_fields(&mut self) -> Result<Option<Vec<String>>> {
        loop {
            self.buf.clear();
            self.line += 1;
            let n = self
                .reader
                .read_line(&mut self.buf)
                .map_err(|e| BterError::io(&self.path, e))?;
            if n == 0 {
                return Ok(None);
            }
            let t = self.buf.trim();
            if !t.is_empty() && !t.starts_with('#') {
                break;
            }
        }
        Ok(Some(self.buf.split_whitespace().map(str::to_owned).collect()))
    }

    fn error(&self, msg: impl Into<String>) -> BterError {
        BterError::Parse {
            path: self.path.clone(),
            line: self.line,
            msg: msg.into(),
        }
    }

    fn field<T: FromStr>(&self, fields: &[String], i: usize, what: &str) -> Result<T> {
        let raw = fields
            .get(i)
            .ok_or_else(|| self.error(format!("missing {what}")))?;
        raw.parse()
            .map_err(|_| self.error(format!("cannot parse {what} from {raw:?}")))
    }
}

/// Reads `degree<TAB>value` rows with strictly ascending positive degrees.
fn read_degree_rows<R: BufRead, T: FromStr>(reader: R, path: &Path) -> Result<Vec<(usize, T)>> {
    let mut lines = Lines::new(reader, path);
    let mut rows = Vec::new();
    let mut last = 0usize;
    while let Some(fields) = lines.next_fields()? {
        if fields.len() != 2 {
            return Err(lines.error(format!("expected 2 columns, found {}", fields.len())));
        }
        let d: usize = lines.field(&fields, 0, "degree")?;
        let v: T = lines.field(&fields, 1, "value")?;
        if d == 0 || d <= last {
            return Err(lines.error(format!("degree {d} is zero or not ascending")));
        }
        last = d;
        rows.push((d, v));
    }
    Ok(rows)
}

pub fn parse_degree_distribution<R: BufRead>(reader: R, path: &Path) -> Result<DegreeDistribution> {
    DegreeDistribution::from_pairs(read_degree_rows::<_, u64>(reader, path)?)
}

pub fn read_degree_distribution(path: &Path) -> Result<DegreeDistribution> {
    parse_degree_distribution(open(path)?, path)
}

/// One row per degree with a nonzero count.
pub fn write_degree_distribution(w: &mut dyn Write, dd: &DegreeDistribution) -> io::Result<()> {
    for (d, n) in dd.iter() {
        writeln!(w, "{d}\t{n}")?;
    }
    Ok(())
}

pub fn parse_clustering_profile<R: BufRead>(reader: R, path: &Path) -> Result<ClusteringProfile> {
    ClusteringProfile::from_pairs(read_degree_rows::<_, f64>(reader, path)?)
}

pub fn read_clustering_profile(path: &Path) -> Result<ClusteringProfile> {
    parse_clustering_profile(open(path)?, path)
}

/// Rows for every degree `2..=max_degree`. Values use the shortest
/// representation that parses back to the same double.
pub fn write_clustering_profile(w: &mut dyn Write, ccd: &ClusteringProfile) -> io::Result<()> {
    for (d, c) in ccd.iter() {
        writeln!(w, "{d}\t{c}")?;
    }
    Ok(())
}

/// Reads pairs in any order and orientation. With `one_based`, ids in the
/// file start at 1.
pub fn parse_edges<R: BufRead>(reader: R, path: &Path, one_based: bool) -> Result<Vec<Edge>> {
    let mut lines = Lines::new(reader, path);
    let mut edges = Vec::new();
    while let Some(fields) = lines.next_fields()? {
        if fields.len() < 2 {
            return Err(lines.error("expected two node ids"));
        }
        let mut u: NodeId = lines.field(&fields, 0, "node id")?;
        let mut v: NodeId = lines.field(&fields, 1, "node id")?;
        if one_based {
            if u == 0 || v == 0 {
                return Err(lines.error("node id 0 in a 1-based edge list"));
            }
            u -= 1;
            v -= 1;
        }
        edges.push(Edge::new(u, v));
    }
    Ok(edges)
}

pub fn read_edges(path: &Path, one_based: bool) -> Result<Vec<Edge>> {
    parse_edges(open(path)?, path, one_based)
}

pub fn write_edges<'a>(
    w: &mut dyn Write,
    edges: impl IntoIterator<Item = &'a Edge>,
    one_based: bool,
) -> io::Result<()> {
    let off = NodeId::from(one_based);
    for e in edges {
        writeln!(w, "{}\t{}", e.u + off, e.v + off)?;
    }
    Ok(())
}

pub fn write_graph(w: &mut dyn Write, graph: &Graph, one_based: bool) -> io::Result<()> {
    write_edges(w, graph.edges(), one_based)
}

fn section<T: Display>(w: &mut dyn Write, name: &str, values: impl IntoIterator<Item = T>) -> io::Result<()> {
    writeln!(w, "[{name}]")?;
    for (i, v) in values.into_iter().enumerate() {
        writeln!(w, "{i}\t{v}")?;
    }
    Ok(())
}

/// Dumps every stored table array. Degree sections are indexed by `d - 1`.
pub fn write_tables(w: &mut dyn Write, t: &SetupTables) -> io::Result<()> {
    writeln!(w, "[scalars]")?;
    writeln!(w, "d_max\t{}", t.d_max())?;
    writeln!(w, "g_max\t{}", t.groups().len())?;
    writeln!(w, "num_nodes\t{}", t.num_nodes())?;
    writeln!(w, "w1\t{}", t.phase1_weight())?;
    writeln!(w, "w2\t{}", t.phase2_weight())?;
    let g = t.groups();
    let gi = 0..g.len();
    section(w, "group_first", gi.clone().map(|k| g.first(k)))?;
    section(w, "group_blocks", gi.clone().map(|k| g.blocks(k)))?;
    section(w, "group_block_size", gi.clone().map(|k| g.block_size(k)))?;
    section(w, "group_weight", gi.map(|k| g.weight(k)))?;
    let d = t.degrees();
    let di = 1..=t.d_max();
    section(w, "degree_count", di.clone().map(|k| d.count(k)))?;
    section(w, "degree_first", di.clone().map(|k| d.first(k)))?;
    section(w, "degree_fill", di.clone().map(|k| d.fill(k)))?;
    section(w, "degree_weight", di.clone().map(|k| d.weight(k)))?;
    section(w, "degree_fill_ratio", di.map(|k| d.fill_ratio(k)))
}

/// Report rows keyed by each bin's lowest degree; undefined coefficients
/// are written as `nan`.
pub fn write_ccd_report(w: &mut dyn Write, report: &CcdReport) -> io::Result<()> {
    writeln!(w, "# gcc\t{}", report.gcc)?;
    writeln!(w, "# d\tc_d\twedges\thalfwidth")?;
    for b in &report.bins {
        writeln!(
            w,
            "{}\t{}\t{}\t{}",
            b.degree_lo,
            b.coefficient.unwrap_or(f64::NAN),
            b.wedges,
            b.half_width.unwrap_or(f64::NAN)
        )?;
    }
    Ok(())
}

/// `degree,count`, or `degree_lo,degree_hi,count,density` with log2 bins
/// where density is count per degree in the bin.
pub fn write_degree_csv(w: &mut dyn Write, dd: &DegreeDistribution, log_binned: bool) -> io::Result<()> {
    if !log_binned {
        writeln!(w, "degree,count")?;
        for (d, n) in dd.iter() {
            writeln!(w, "{d},{n}")?;
        }
        return Ok(());
    }
    writeln!(w, "degree_lo,degree_hi,count,density")?;
    let mut lo = 1usize;
    while lo <= dd.d_max() {
        let hi = 2 * lo - 1;
        let count: u64 = (lo..=hi).map(|d| dd.count(d)).sum();
        if count > 0 {
            writeln!(w, "{lo},{hi},{count},{}", count as f64 / lo as f64)?;
        }
        lo *= 2;
    }
    Ok(())
}

pub fn write_ccd_csv(w: &mut dyn Write, report: &CcdReport) -> io::Result<()> {
    writeln!(w, "degree_lo,degree_hi,c_d,wedges,halfwidth")?;
    for b in &report.bins {
        if let Some(c) = b.coefficient {
            writeln!(
                w,
                "{},{},{},{},{}",
                b.degree_lo,
                b.degree_hi,
                c,
                b.wedges,
                b.half_width.unwrap_or(0.0)
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::dedup;
    use crate::metrics::{ccd_exact, degree_distribution};
    use crate::model::{validate_inputs, ClusteringProfile};
    use crate::setup::bter_setup;
    use proptest::prelude::*;

    fn p() -> &'static Path {
        Path::new("mem")
    }

    #[test]
    fn degree_file_round_trip() {
        let dd = DegreeDistribution::from_counts(vec![26, 20, 10, 6, 4, 3, 2, 1, 1]);
        let mut buf = Vec::new();
        write_degree_distribution(&mut buf, &dd).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("1\t26\n2\t20\n"));
        assert_eq!(parse_degree_distribution(&buf[..], p()).unwrap(), dd);
    }

    #[test]
    fn omitted_degrees_are_zero() {
        let dd = parse_degree_distribution(&b"# comment\n2\t5\n\n7 1\n"[..], p()).unwrap();
        assert_eq!(dd.count(1), 0);
        assert_eq!(dd.count(2), 5);
        assert_eq!(dd.count(7), 1);
        let ccd = parse_clustering_profile(&b"2\t0.5\n4\t0.25\n"[..], p()).unwrap();
        assert_eq!(ccd.get(3), Some(0.0));
        assert_eq!(ccd.get(4), Some(0.25));
        assert_eq!(ccd.get(5), None);
    }

    #[test]
    fn malformed_files_report_line() {
        let err = parse_degree_distribution(&b"1\t2\n3\tx\n"[..], p()).unwrap_err();
        assert!(matches!(err, BterError::Parse { line: 2, .. }), "{err}");
        let err = parse_degree_distribution(&b"3\t2\n2\t1\n"[..], p()).unwrap_err();
        assert!(matches!(err, BterError::Parse { line: 2, .. }));
        assert!(parse_degree_distribution(&b"0\t2\n"[..], p()).is_err());
        assert!(parse_degree_distribution(&b"1\t2\t3\n"[..], p()).is_err());
        assert!(parse_edges(&b"1\n"[..], p(), false).is_err());
        assert!(parse_edges(&b"0 1\n"[..], p(), true).is_err());
    }

    #[test]
    fn edge_reader_accepts_any_order() {
        let raw = parse_edges(&b"# header\n5\t2\n2 5\n1\t3\n3\t3\n"[..], p(), false).unwrap();
        let g = dedup(raw);
        assert_eq!(g.edges(), &[Edge::new(1, 3), Edge::new(2, 5)]);
        let mut buf = Vec::new();
        write_graph(&mut buf, &g, true).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "2\t4\n3\t6\n");
        assert_eq!(dedup(parse_edges(&buf[..], p(), true).unwrap()), g);
    }

    #[test]
    fn measured_distribution_round_trips() {
        // distribution measured from a generated toy graph
        let dd = DegreeDistribution::from_counts(vec![26, 20, 10, 6, 4, 3, 2, 1, 1]);
        let inputs = validate_inputs(dd, ClusteringProfile::constant(0.5, 9), 1.0).unwrap();
        let t = bter_setup(&inputs).unwrap();
        let plan = crate::edgegen::GenerationPlan::for_tables(&t, 1).unwrap();
        let g = dedup(crate::edgegen::generate(&t, &plan, 4));
        let measured = degree_distribution(&g).distribution;
        let mut buf = Vec::new();
        write_degree_distribution(&mut buf, &measured).unwrap();
        assert_eq!(parse_degree_distribution(&buf[..], p()).unwrap(), measured);
    }

    #[test]
    fn tables_dump_sections() {
        let dd = DegreeDistribution::from_counts(vec![26, 20, 10, 6, 4, 3, 2, 1, 1]);
        let inputs = validate_inputs(dd, ClusteringProfile::constant(0.5, 9), 1.0).unwrap();
        let t = bter_setup(&inputs).unwrap();
        let mut buf = Vec::new();
        write_tables(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for name in ["scalars", "group_first", "group_blocks", "group_block_size", "group_weight",
            "degree_count", "degree_first", "degree_fill", "degree_weight", "degree_fill_ratio"] {
            assert!(text.contains(&format!("[{name}]\n")), "{name}");
        }
        assert!(text.contains("[group_blocks]\n0\t7\n"));
        assert!(text.contains("d_max\t9\n"));
    }

    #[test]
    fn report_and_csv() {
        let g = dedup([(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)].map(Edge::from));
        let r = ccd_exact(&g);
        let mut buf = Vec::new();
        write_ccd_report(&mut buf, &r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("# gcc\t0.75\n"));
        assert!(text.contains("2\t1\t2\t0\n"));
        let mut buf = Vec::new();
        write_ccd_csv(&mut buf, &r).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("degree_lo,degree_hi,c_d,wedges,halfwidth\n2,2,1,2,0\n"));

        let dd = DegreeDistribution::from_counts(vec![4, 3, 2, 0, 1]);
        let mut buf = Vec::new();
        write_degree_csv(&mut buf, &dd, true).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "degree_lo,degree_hi,count,density\n1,1,4,4\n2,3,5,2.5\n4,7,1,0.25\n");
    }

    proptest! {
        #[test]
        fn profile_text_round_trip(values in proptest::collection::vec(0.0f64..=1.0, 2..40)) {
            let ccd = ClusteringProfile::from_values(values);
            let mut buf = Vec::new();
            write_clustering_profile(&mut buf, &ccd).unwrap();
            let back = parse_clustering_profile(&buf[..], p()).unwrap();
            for (d, c) in ccd.iter() {
                prop_assert_eq!(back.get(d), Some(c));
            }
        }
    }
}

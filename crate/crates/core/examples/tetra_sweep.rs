use hullkit::generators::tetra::{tetra_multihopf, MAX_P, MIN_P};

fn main() {
    for p in MIN_P..=MAX_P {
        let t = std::time::Instant::now();
        match tetra_multihopf(p) {
            Ok(l) => println!("p={p} ok bounds=({},{:?}) witness={} {:?}", l.bounds.lower, l.bounds.upper, l.witness, t.elapsed()),
            Err(e) => println!("p={p} err {e} {:?}", t.elapsed()),
        }
    }
}

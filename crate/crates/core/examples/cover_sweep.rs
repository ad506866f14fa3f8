fn main() {
    for p in 1..=12 {
        let t = std::time::Instant::now();
        let r = hullkit::cover::min_max_cover(p).unwrap();
        println!("{} {} {:?}", r.machine_line(), r.witness, t.elapsed());
    }
}

use mapmix::map::*;
use mapmix::dynamics::*;

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    for m in [single_edge(), loop_map(), m0(2), m0(3)] {
        for c in 0..m.n_darts() {
            if c == m.root() { continue; }
            for s in [Sign3::Plus, Sign3::Minus] {
                let m2 = m.clone();
                let result = std::panic::catch_unwind(move || rotate(&m2, c, s).unwrap());
                match result {
                    Ok(r) => {
                        if let Err(e) = r.validate() {
                            println!("INVALID: m={:?} c={} s={:?} -> {:?}  err={}", m, c, s, r, e);
                        }
                    }
                    Err(_) => println!("PANIC: m={:?} c={} s={:?}", m, c, s),
                }
            }
        }
    }
}

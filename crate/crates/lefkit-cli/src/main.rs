fn main() {
    println!("lefkit");
}

fn main() {
    // Dense symmetric/Hermitian eigensolves go through the system LAPACK
    // (`liblapack.so`, typically the OpenBLAS alternative on Debian/Ubuntu).
    println!("cargo:rustc-link-lib=dylib=lapack");
    println!("cargo:rustc-link-lib=dylib=blas");
}

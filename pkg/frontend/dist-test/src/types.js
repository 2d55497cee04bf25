/** Wire types mirroring the compute service JSON bodies. */
export {};

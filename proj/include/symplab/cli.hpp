#ifndef SYMPLAB_CLI_HPP
#define SYMPLAB_CLI_HPP

namespace symplab {

/** Command-line entry point. Subcommands:
 *   run    --scenario S.json --out R.json [--seed k] [--tolerance-scale s]
 *   moser  --embedding E.emb [--scenario S.json] [--steps n]
 *          [--out R.json] [--out-embedding F.emb]
 *   info   --embedding E.emb [--scenario S.json]
 * Exit codes: 0 success / all asserted suites pass, 1 suite or check failure,
 * 2 usage or input errors. */
int run_cli(int argc, const char* const* argv);

} // namespace symplab

#endif

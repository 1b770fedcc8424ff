#include <qelong/cli.hpp>

#ifndef QELONG_DATA_DIR
#define QELONG_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
    return qelong::run_cli(argc, argv, QELONG_DATA_DIR);
}

#include "app/cli.hpp"

int main(int argc, char** argv)
{
    return minecast::app::run(argc, argv);
}

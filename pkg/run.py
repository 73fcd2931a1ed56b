from app.main import cli


def run():
    cli(prog_name="bars")


if __name__ == "__main__":
    run()
